"""Exact moment sequences of the reference measures on the nonnegative orthant.

Two built-in measures are supported: the product of n unit-mean exponential
distributions, with moments y_alpha = prod_i alpha_i!, and Lebesgue measure on
the standard simplex {x >= 0, sum x_i <= 1}, with moments
y_alpha = prod_i alpha_i! / (n + |alpha|)!.  The simplex moments are the raw
Lebesgue values (y_0 = 1/n!, the simplex volume, not 1); cone-membership
verdicts are invariant under positive scaling, so no normalization is applied.

All moments are exact rationals.  Factorials grow super-exponentially, so
everything runs on Python's unbounded integers.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction

from ._linalg import det_rational
from .indexing import MultiIndex, enumerate_basis


class MomentDegreeError(ValueError):
    """A computation needs moments beyond the sequence's max_degree."""

    def __init__(self, needed: int, available: int, context: str):
        super().__init__(
            f"{context} needs moments up to degree {needed}, "
            f"but the sequence only provides degree {available}"
        )
        self.needed = needed
        self.available = available


class MomentFileError(ValueError):
    """A moment file violates the schema."""


def exponential_moment(alpha) -> Fraction:
    """Moment of the i.i.d. unit-mean exponential product measure: prod_i alpha_i!."""
    value = 1
    for a in alpha:
        if a < 0:
            raise ValueError(f"multi-index entries must be nonnegative, got {tuple(alpha)}")
        value *= math.factorial(a)
    return Fraction(value)


def simplex_moment(alpha, n: int) -> Fraction:
    """Lebesgue moment over the standard n-simplex: prod_i alpha_i! / (n + |alpha|)!."""
    alpha = tuple(alpha)
    if len(alpha) != n:
        raise ValueError(f"multi-index length {len(alpha)} does not match dimension {n}")
    numerator = 1
    for a in alpha:
        if a < 0:
            raise ValueError(f"multi-index entries must be nonnegative, got {alpha}")
        numerator *= math.factorial(a)
    return Fraction(numerator, math.factorial(n + sum(alpha)))


class MomentSequence:
    """Exact moments y_alpha of a measure for all |alpha| <= max_degree.

    Immutable after construction.  `evaluate` is the linear functional L_y
    sending a polynomial sum_alpha c_alpha x^alpha to sum_alpha c_alpha y_alpha,
    computed in exact rational arithmetic.
    """

    def __init__(self, n: int, max_degree: int, values: dict, descriptor: str):
        if n < 1:
            raise ValueError(f"dimension must be at least 1, got n={n}")
        if max_degree < 0:
            raise ValueError(f"max_degree must be nonnegative, got {max_degree}")
        self.n = n
        self.max_degree = max_degree
        self.descriptor = descriptor
        self._values = {tuple(a): Fraction(v) for a, v in values.items()}
        missing = [a for a in enumerate_basis(n, max_degree) if a not in self._values]
        if missing:
            raise ValueError(
                f"moment sequence incomplete: missing alpha={missing[0]} "
                f"(and {len(missing) - 1} more) below max_degree={max_degree}"
            )

    @classmethod
    def exponential(cls, n: int, max_degree: int) -> "MomentSequence":
        values = {a: exponential_moment(a) for a in enumerate_basis(n, max_degree)}
        return cls(n, max_degree, values, "exponential")

    @classmethod
    def simplex(cls, n: int, max_degree: int) -> "MomentSequence":
        values = {a: simplex_moment(a, n) for a in enumerate_basis(n, max_degree)}
        return cls(n, max_degree, values, "simplex")

    def value(self, alpha) -> Fraction:
        alpha = tuple(alpha)
        try:
            return self._values[alpha]
        except KeyError:
            if len(alpha) != self.n:
                raise ValueError(
                    f"multi-index length {len(alpha)} does not match dimension {self.n}"
                ) from None
            raise MomentDegreeError(sum(alpha), self.max_degree, f"moment y_{alpha}") from None

    def evaluate(self, poly) -> Fraction:
        """Apply L_y to a polynomial (anything with a .coefficients mapping, or a mapping)."""
        coefficients = getattr(poly, "coefficients", poly)
        total = Fraction(0)
        for alpha, c in coefficients.items():
            total += Fraction(c) * self.value(alpha)
        return total

    def items(self):
        """(alpha, value) pairs in graded lex order, up to max_degree."""
        for alpha in enumerate_basis(self.n, self.max_degree):
            yield alpha, self._values[alpha]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MomentSequence)
            and (self.n, self.max_degree) == (other.n, other.max_degree)
            and all(self._values[a] == other._values[a] for a, _ in self.items())
        )

    def __repr__(self) -> str:
        return f"MomentSequence({self.descriptor!r}, n={self.n}, max_degree={self.max_degree})"


def _poly_mul(p: dict, q: dict, n: int) -> dict:
    out: dict = {}
    for a, ca in p.items():
        for b, cb in q.items():
            key = tuple(a[i] + b[i] for i in range(n))
            c = out.get(key, Fraction(0)) + ca * cb
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def affine_simplex_moments(vertices, max_degree: int) -> MomentSequence:
    """Exact Lebesgue moments on the simplex spanned by the given n+1 vertices.

    Change of variables x = v0 + E @ lam (E has the edges v_k - v0 as columns)
    maps the standard simplex in lam to the target simplex; each x^alpha is
    expanded into a polynomial in lam, whose monomials integrate by the
    Dirichlet formula beta! / (n + |beta|)!, all scaled by |det E|.
    """
    verts = [tuple(Fraction(c) for c in v) for v in vertices]
    n = len(verts) - 1
    if n < 1:
        raise ValueError("need at least 2 vertices")
    if any(len(v) != n for v in verts):
        raise ValueError(f"expected {n + 1} vertices of dimension {n}")
    edges = [[verts[k + 1][i] - verts[0][i] for k in range(n)] for i in range(n)]
    volume_scale = abs(det_rational(edges))
    if volume_scale == 0:
        raise ValueError("degenerate simplex: vertices are affinely dependent")

    zero = (0,) * n
    unit = lambda k: tuple(1 if i == k else 0 for i in range(n))
    # coordinate x_i as a degree-1 polynomial in lam
    coords = []
    for i in range(n):
        lin = {}
        if verts[0][i]:
            lin[zero] = verts[0][i]
        for k in range(n):
            if edges[i][k]:
                lin[unit(k)] = edges[i][k]
        coords.append(lin)

    values = {}
    for alpha in enumerate_basis(n, max_degree):
        poly = {zero: Fraction(1)}
        for i, e in enumerate(alpha):
            for _ in range(e):
                poly = _poly_mul(poly, coords[i], n)
        total = Fraction(0)
        for beta, c in poly.items():
            numerator = 1
            for b in beta:
                numerator *= math.factorial(b)
            total += c * Fraction(numerator, math.factorial(n + sum(beta)))
        values[alpha] = volume_scale * total

    pretty = ", ".join("(" + ", ".join(str(c) for c in v) + ")" for v in verts)
    return MomentSequence(n, max_degree, values, f"affine-simplex[{pretty}]")


def _parse_rational(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise MomentFileError(
            f"{where}: value must be an exact rational string like \"3/4\", got {raw!r}"
        )
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise MomentFileError(f"{where}: cannot parse {raw!r} as a rational") from exc


def load_moments(path) -> MomentSequence:
    """Read a moment file: {"n": int, "max_degree": int, "moments": [{"alpha", "value"}]}."""
    with open(path) as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as exc:
            raise MomentFileError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise MomentFileError(f"{path}: top level must be an object")
    n = data.get("n")
    max_degree = data.get("max_degree")
    if not isinstance(n, int) or n < 1:
        raise MomentFileError(f"{path}: \"n\" must be a positive integer, got {n!r}")
    if not isinstance(max_degree, int) or max_degree < 0:
        raise MomentFileError(f"{path}: \"max_degree\" must be a nonnegative integer")
    entries = data.get("moments")
    if not isinstance(entries, list):
        raise MomentFileError(f"{path}: \"moments\" must be a list")
    values: dict = {}
    for k, item in enumerate(entries):
        if not isinstance(item, dict) or "alpha" not in item or "value" not in item:
            raise MomentFileError(f"{path}: moments[{k}] must have \"alpha\" and \"value\"")
        alpha = item["alpha"]
        if (
            not isinstance(alpha, list)
            or len(alpha) != n
            or any(not isinstance(a, int) or a < 0 for a in alpha)
        ):
            raise MomentFileError(
                f"{path}: moments[{k}].alpha must be {n} nonnegative integers, got {alpha!r}"
            )
        alpha = tuple(alpha)
        if alpha in values:
            raise MomentFileError(f"{path}: duplicate alpha {alpha}")
        values[alpha] = _parse_rational(item["value"], f"{path}: moments[{k}]")
    try:
        return MomentSequence(n, max_degree, values, f"file:{path}")
    except ValueError as exc:
        raise MomentFileError(f"{path}: {exc}") from exc


def save_moments(seq: MomentSequence, path) -> None:
    """Write a moment file in the schema load_moments reads, values as exact strings."""
    payload = {
        "n": seq.n,
        "max_degree": seq.max_degree,
        "moments": [
            {"alpha": list(alpha), "value": str(value)} for alpha, value in seq.items()
        ],
    }
    with open(path, "w") as handle:
        json.dump(payload, handle, indent=1)
        handle.write("\n")
