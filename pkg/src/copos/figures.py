"""Render slice-scan results to an image file alongside the CSV output."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

# (verdict class) -> color, legend label, draw order
_STYLES = [
    ("member_yes", "#2b6cb0", "exact copositive, level member"),
    ("member_only", "#9ecae9", "level member only (outer slack)"),
    ("undetermined", "#f0a24b", "undetermined band"),
    ("rejected", "#d9d9d9", "rejected"),
]


def _classify(point) -> str:
    if point.verdict == "member":
        return "member_yes" if point.oracle == "yes" else "member_only"
    if point.verdict == "undetermined":
        return "undetermined"
    return "rejected"


def render_scan(points, path, title: str | None = None) -> None:
    """Scatter a 2x2 slice scan in the (a, b) plane and save the figure."""
    if not points:
        raise ValueError("nothing to plot: empty scan")
    groups: dict[str, tuple[list, list]] = {key: ([], []) for key, _, _ in _STYLES}
    for p in points:
        xs, ys = groups[_classify(p)]
        xs.append(float(p.a))
        ys.append(float(p.b))

    fig, ax = plt.subplots(figsize=(6.0, 5.4))
    for key, color, label in _STYLES:
        xs, ys = groups[key]
        if xs:
            ax.scatter(xs, ys, s=9, marker="s", color=color, label=label, linewidths=0)
    first = points[0]
    ax.set_xlabel("a")
    ax.set_ylabel("b")
    ax.set_title(title or f"level-{first.level} outer cone vs exact region, c={first.c}")
    ax.set_aspect("equal")
    ax.legend(fontsize=8, loc="lower right", framealpha=0.9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
