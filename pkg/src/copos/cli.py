"""Command-line surface: check, dual, sample, scan, moments.

Exit codes follow the sysexits convention where it matters:
0 accept / success, 1 rejected (certified not copositive), 2 undetermined,
64 usage or malformed values (including asymmetric matrices), 65 data or file
errors, 70 internal numerical failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .inner import dual_membership, generator_from_poly
from .measures import (
    MomentDegreeError,
    MomentFileError,
    MomentSequence,
    affine_simplex_moments,
    load_moments,
    save_moments,
)
from .momentmatrix import Polynomial, SymMatrixQ
from .outer import (
    DECISION_BAND,
    HierarchyInconsistencyError,
    hierarchy_scan,
    slice_scan_2x2,
    write_scan_csv,
)
from .spectra import EigenConvergenceError
from .indexing import enumerate_basis

EXIT_ACCEPT = 0
EXIT_REJECT = 1
EXIT_UNDETERMINED = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70


class MatrixFileError(ValueError):
    """A matrix file violates the schema."""


class AsymmetricMatrixError(MatrixFileError):
    """Matrix entries are not symmetric; maps to a usage error."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _parse_entry(raw, where: str) -> Fraction:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise MatrixFileError(
            f"{where}: entries must be decimal or p/q strings (or integers), "
            f"not JSON floats; got {raw!r}"
        )
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise MatrixFileError(f"{where}: cannot parse entry {raw!r} as a rational") from exc


def load_matrix(path) -> SymMatrixQ:
    """Read {"n": int, "entries": [[strings]]}; entries parse to exact rationals."""
    with open(path) as handle:
        data = json.load(handle)
    if not isinstance(data, dict):
        raise MatrixFileError(f"{path}: top level must be an object")
    n = data.get("n")
    entries = data.get("entries")
    if not isinstance(n, int) or n < 1:
        raise MatrixFileError(f"{path}: \"n\" must be a positive integer, got {n!r}")
    if (
        not isinstance(entries, list)
        or len(entries) != n
        or any(not isinstance(row, list) or len(row) != n for row in entries)
    ):
        raise MatrixFileError(f"{path}: \"entries\" must be an {n}x{n} array")
    parsed = [
        [_parse_entry(entries[i][j], f"{path}: entries[{i}][{j}]") for j in range(n)]
        for i in range(n)
    ]
    bad = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if parsed[i][j] != parsed[j][i]
    ]
    if bad:
        listing = ", ".join(
            f"({i},{j})={entries[i][j]!r} vs ({j},{i})={entries[j][i]!r}" for i, j in bad
        )
        raise AsymmetricMatrixError(f"{path}: matrix is not symmetric: {listing}")
    return SymMatrixQ.from_rows(parsed)


def resolve_measure(spec: str, n: int, needed_degree: int) -> MomentSequence:
    if spec == "exponential":
        return MomentSequence.exponential(n, needed_degree)
    if spec == "simplex":
        return MomentSequence.simplex(n, needed_degree)
    if spec.startswith("file:"):
        seq = load_moments(spec[len("file:"):])
        if seq.n != n:
            raise MomentFileError(
                f"moment file has dimension {seq.n}, matrix has dimension {n}"
            )
        if seq.max_degree < needed_degree:
            raise MomentDegreeError(needed_degree, seq.max_degree, "this level")
        return seq
    raise ValueError(
        f"unknown measure {spec!r}: expected exponential, simplex, or file:PATH"
    )


def _positive(kind, raw, flag):
    value = kind(raw)
    if value <= 0:
        raise ValueError(f"{flag} must be positive, got {raw}")
    return value


def cmd_check(args) -> int:
    A = load_matrix(args.matrix)
    band = float(args.band)
    if band < 0:
        raise ValueError(f"--band must be nonnegative, got {args.band}")
    y = resolve_measure(args.measure, A.size, 2 * args.level + 2)
    result = hierarchy_scan(A, args.level, y, band)
    for v in result.verdicts:
        print(f"level {v.level}: min_eig={v.min_eigenvalue: .17g}  {v.decision}")
    print(f"summary: {result.summary} (measure={y.descriptor})")
    if result.first_rejection is not None:
        return EXIT_REJECT
    if all(v.decision == "undetermined" for v in result.verdicts):
        return EXIT_UNDETERMINED
    return EXIT_ACCEPT


def cmd_dual(args) -> int:
    A = load_matrix(args.matrix)
    tol = _positive(float, args.tol, "--tol")
    max_iter = _positive(int, args.max_iter, "--max-iter")
    y = resolve_measure(args.measure, A.size, 2 * args.level + 2)
    result = dual_membership(A, args.level, y, tol=tol, max_iter=max_iter)
    if not result.is_member:
        print(
            f"undetermined after {result.iterations} iterations "
            f"(residual {result.residual:.3e}); no certificate produced",
            file=sys.stderr,
        )
        return EXIT_UNDETERMINED
    certificate = {
        "d": result.level,
        "X": [[float(x) for x in row] for row in result.certificate],
        "residual": result.residual,
    }
    text = json.dumps(certificate, indent=1)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    print(
        f"member of the level-{result.level} inner cone "
        f"({result.iterations} iterations, residual {result.residual:.3e})",
        file=sys.stderr,
    )
    return EXIT_ACCEPT


def cmd_sample(args) -> int:
    if args.count < 1:
        raise ValueError(f"--count must be at least 1, got {args.count}")
    if args.n < 1:
        raise ValueError(f"--n must be at least 1, got {args.n}")
    y = resolve_measure(args.measure, args.n, 2 * args.level + 2)
    basis = enumerate_basis(args.n, args.level)
    rng = random.Random(args.seed)
    for _ in range(args.count):
        coeffs = {
            alpha: Fraction(rng.randint(-30, 30), rng.randint(1, 6)) for alpha in basis
        }
        g = Polynomial(args.n, coeffs)
        G = generator_from_poly(g, y, args.level)
        record = {
            "n": args.n,
            "level": args.level,
            "measure": y.descriptor,
            "g": [
                {"alpha": list(alpha), "coef": str(coeffs[alpha])} for alpha in basis
            ],
            "entries": [[str(x) for x in row] for row in G.rows()],
        }
        print(json.dumps(record))
    return EXIT_ACCEPT


def cmd_scan(args) -> int:
    band = float(args.band)
    if band < 0:
        raise ValueError(f"--band must be nonnegative, got {args.band}")
    lo, hi = Fraction(args.range[0]), Fraction(args.range[1])
    step = Fraction(args.step)
    y = resolve_measure(args.measure, 2, 2 * args.level + 2)
    points = slice_scan_2x2((lo, hi), (lo, hi), step, Fraction(args.c), args.level, y, band)
    with open(args.out, "w") as handle:
        write_scan_csv(points, handle)
    counts = {"member": 0, "rejected": 0, "undetermined": 0}
    for p in points:
        counts[p.verdict] += 1
    print(
        f"wrote {len(points)} rows to {args.out} "
        f"(member={counts['member']}, rejected={counts['rejected']}, "
        f"undetermined={counts['undetermined']})",
        file=sys.stderr,
    )
    if args.plot:
        from .figures import render_scan

        render_scan(points, args.plot)
        print(f"wrote figure to {args.plot}", file=sys.stderr)
    return EXIT_ACCEPT


def _parse_vertices(raw):
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ValueError(f"--k-base must be JSON like [[0,0],[1,0],[0,1]]: {exc}") from exc
    if not isinstance(data, list) or any(not isinstance(v, list) for v in data):
        raise ValueError("--k-base must be a JSON list of vertex lists")
    return data


def cmd_moments(args) -> int:
    if args.max_degree < 0:
        raise ValueError(f"--max-degree must be nonnegative, got {args.max_degree}")
    if args.k_base:
        vertices = _parse_vertices(args.k_base)
        seq = affine_simplex_moments(vertices, args.max_degree)
        if args.n and args.n != seq.n:
            raise ValueError(f"--n {args.n} conflicts with {len(vertices)} vertices")
    else:
        if args.n < 1:
            raise ValueError(f"--n must be at least 1, got {args.n}")
        if args.measure == "exponential":
            seq = MomentSequence.exponential(args.n, args.max_degree)
        elif args.measure == "simplex":
            seq = MomentSequence.simplex(args.n, args.max_degree)
        else:
            raise ValueError(
                f"measure {args.measure!r} cannot be exported; "
                "use exponential, simplex, or --k-base"
            )
    save_moments(seq, args.out)
    print(f"wrote {seq.descriptor} moments (n={seq.n}, degree {seq.max_degree}) to {args.out}",
          file=sys.stderr)
    return EXIT_ACCEPT


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="copos",
        description="Outer/inner spectrahedral tests for the copositive cone and its dual.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_measure(p):
        p.add_argument(
            "--measure",
            default="simplex",
            help="exponential, simplex (default), or file:PATH with moments up to 2d+2",
        )

    p = sub.add_parser("check", help="hierarchy membership test of a matrix file")
    p.add_argument("matrix", help="JSON matrix file")
    p.add_argument("--level", type=int, default=3, help="deepest level d (default 3)")
    add_measure(p)
    p.add_argument("--band", default=str(DECISION_BAND), help="undetermined band on min eig")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("dual", help="certificate search in the level-d inner cone")
    p.add_argument("matrix", help="JSON matrix file")
    p.add_argument("--level", type=int, default=1)
    add_measure(p)
    p.add_argument("--tol", default="1e-8")
    p.add_argument("--max-iter", type=int, default=5000)
    p.add_argument("--out", help="write the certificate JSON here instead of stdout")
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("sample", help="emit random inner-cone generator matrices")
    p.add_argument("--n", type=int, default=2, help="matrix dimension (default 2)")
    p.add_argument("--level", type=int, default=1)
    add_measure(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("scan", help="2x2 slice scan of the (a,b) plane at fixed c")
    p.add_argument("--c", default="1", help="fixed c value (default 1)")
    p.add_argument("--range", nargs=2, default=["-1.5", "1.5"], metavar=("LO", "HI"))
    p.add_argument("--step", default="0.05")
    p.add_argument("--level", type=int, default=1)
    add_measure(p)
    p.add_argument("--band", default=str(DECISION_BAND))
    p.add_argument("--out", required=True, help="CSV output path")
    p.add_argument("--plot", help="also render the scan to this image file")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("moments", help="export exact moments to a JSON file")
    p.add_argument("--measure", default="exponential")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument(
        "--k-base",
        help="JSON list of n+1 simplex vertices; exports Lebesgue moments on that base",
    )
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_moments)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AsymmetricMatrixError as exc:
        print(f"copos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (MatrixFileError, MomentFileError, MomentDegreeError) as exc:
        print(f"copos: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (json.JSONDecodeError, OSError) as exc:
        print(f"copos: file error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"copos: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EigenConvergenceError, HierarchyInconsistencyError) as exc:
        print(f"copos: numerical failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
