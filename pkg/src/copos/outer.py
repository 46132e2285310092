"""Membership in the level-d outer approximations of the copositive cone.

A symmetric A passes level d when the localizing matrix of its quadratic form
is positive semidefinite.  The levels are nested and shrink onto the copositive
cone, so a strictly negative eigenvalue at any level certifies that A is not
copositive; membership at finite d certifies nothing beyond level-d
consistency, which is why near-zero eigenvalues report "undetermined" instead
of being forced to a side.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import det_rational
from .measures import MomentDegreeError, MomentSequence
from .momentmatrix import SymMatrixQ, localizing_matrix, quadratic_form
from .oracles import exact_2x2
from .spectra import EigenConvergenceError, min_eigenvalue, to_float

# Verdicts with |min eigenvalue| inside this band (on the normalized matrix)
# are reported undetermined: boundary membership is not numerically decidable.
DECISION_BAND = 1e-9
DEFAULT_MAX_LEVEL = 3

CSV_HEADER = "a,b,c,d_level,min_eig,verdict,oracle_verdict"


class HierarchyInconsistencyError(RuntimeError):
    """A rejection failed to persist at a higher level (numerical-tolerance problem)."""


@dataclass(frozen=True)
class MembershipVerdict:
    level: int
    min_eigenvalue: float  # of the normalized localizing matrix
    decision: str  # "member" | "rejected" | "undetermined"
    decision_band: float
    measure: str
    note: str | None = None
    cone: str | None = None

    @property
    def rejected(self) -> bool:
        return self.decision == "rejected"


def membership(
    A: SymMatrixQ, d: int, y: MomentSequence, band: float = DECISION_BAND
) -> MembershipVerdict:
    """Level-d test: assemble the localizing matrix exactly, then eigen-test it.

    "rejected" certifies that A is outside every deeper level and hence not
    copositive (up to the band); "member" only asserts level-d consistency.
    """
    if band < 0:
        raise ValueError(f"decision band must be nonnegative, got {band}")
    if d < 0:
        raise ValueError(f"level must be nonnegative, got {d}")
    if A.size != y.n:
        raise ValueError(f"matrix size {A.size} does not match measure dimension {y.n}")
    needed = 2 * d + 2
    if y.max_degree < needed:
        raise MomentDegreeError(needed, y.max_degree, f"level-{d} membership test")
    M = localizing_matrix(quadratic_form(A), y, d)
    F = to_float(M, normalize=True)
    try:
        spectrum = min_eigenvalue(F)
    except EigenConvergenceError as exc:
        return MembershipVerdict(
            d, float("nan"), "undetermined", band, y.descriptor, note=str(exc)
        )
    smallest = spectrum.eigenvalues[0]
    if smallest < -band:
        decision = "rejected"
    elif smallest > band:
        decision = "member"
    else:
        decision = "undetermined"
    return MembershipVerdict(d, smallest, decision, band, y.descriptor)


@dataclass(frozen=True)
class HierarchyResult:
    verdicts: tuple[MembershipVerdict, ...]
    first_rejection: int | None

    @property
    def summary(self) -> str:
        if self.first_rejection is None:
            return f"no rejection up to level {self.verdicts[-1].level}"
        return f"rejected at level {self.first_rejection}"


def hierarchy_scan(
    A: SymMatrixQ, d_max: int, y: MomentSequence, band: float = DECISION_BAND
) -> HierarchyResult:
    """Run levels 0..d_max and report the first rejection, if any.

    Undetermined never counts as a rejection.  Rejection must be monotone in
    the level (each matrix is a leading principal submatrix of the next);
    a non-rejection after a rejection is surfaced as an internal error rather
    than silently ignored.
    """
    verdicts = []
    first_rejection = None
    for d in range(d_max + 1):
        verdict = membership(A, d, y, band)
        verdicts.append(verdict)
        if verdict.rejected and first_rejection is None:
            first_rejection = d
        if first_rejection is not None and not verdict.rejected:
            raise HierarchyInconsistencyError(
                f"rejected at level {first_rejection} but {verdict.decision} at "
                f"level {d} (min eig {verdict.min_eigenvalue:.3e}); "
                "tighten tolerances"
            )
    return HierarchyResult(tuple(verdicts), first_rejection)


@dataclass(frozen=True)
class ScanPoint:
    a: Fraction
    b: Fraction
    c: Fraction
    level: int
    min_eig: float
    verdict: str
    oracle: str


def _grid(lo, hi, step) -> list[Fraction]:
    lo, hi, step = Fraction(lo), Fraction(hi), Fraction(step)
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    values = []
    k = 0
    while lo + k * step <= hi:
        values.append(lo + k * step)
        k += 1
    return values


def slice_scan_2x2(
    a_range,
    b_range,
    step,
    c,
    d: int,
    y: MomentSequence,
    band: float = DECISION_BAND,
) -> list[ScanPoint]:
    """Scan the (a, b) plane at fixed c: level-d verdict plus the exact oracle.

    Ranges are inclusive (lo, hi) pairs walked with an exact rational step, in
    row-major order (a outer, b inner), so output order is deterministic.
    """
    if y.n != 2:
        raise ValueError(f"slice scan is 2x2 only, measure has dimension {y.n}")
    c = Fraction(c)
    points = []
    for a in _grid(*a_range, step):
        for b in _grid(*b_range, step):
            A = SymMatrixQ.from_rows([[a, b], [b, c]])
            verdict = membership(A, d, y, band)
            oracle = exact_2x2(A)
            points.append(
                ScanPoint(a, b, c, d, verdict.min_eigenvalue, verdict.decision, oracle.copositive)
            )
    return points


def write_scan_csv(points, stream) -> None:
    """Emit scan rows as CSV; floats carry 17 significant digits."""
    stream.write(CSV_HEADER + "\n")
    for p in points:
        stream.write(
            f"{float(p.a):.17g},{float(p.b):.17g},{float(p.c):.17g},"
            f"{p.level},{p.min_eig:.17g},{p.verdict},{p.oracle}\n"
        )


def simplicial_cone_membership(
    A: SymMatrixQ,
    B,
    d: int,
    y: MomentSequence,
    band: float = DECISION_BAND,
) -> MembershipVerdict:
    """Copositivity of A on the simplicial cone K = B R^n_+, via A -> B^T A B.

    The change of variables x = B u maps K-copositivity of A to ordinary
    copositivity of B^T A B.  Float entries of B are converted exactly via
    Fraction(float), so irrational cones are tested at their float rounding.
    """
    rows = [[Fraction(x) for x in row] for row in B]
    n = A.size
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"cone base matrix must be {n}x{n}")
    if det_rational(rows) == 0:
        raise ValueError("cone base matrix is singular")
    transformed = [
        [
            sum(rows[k][i] * A.entry(k, l) * rows[l][j] for k in range(n) for l in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    verdict = membership(SymMatrixQ.from_rows(transformed), d, y, band)
    pretty = "[" + "; ".join(", ".join(str(x) for x in row) for row in B) + "]"
    return dataclasses.replace(verdict, cone=f"simplicial B={pretty}")
