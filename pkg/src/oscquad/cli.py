"""Command-line front end.

Exit codes: 0 ok, 1 acceptance check failed, 2 usage or input error,
3 numerical failure.  Numbers are printed with 17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import sys
from typing import Sequence

import numpy as np

from .diagnostics import convergence_study, growth_study
from .exceptions import (
    ConditioningError,
    DomainError,
    GridError,
    NumericalError,
    OracleConvergenceError,
    RangeError,
)
from .extension import ExtensionParams, GridFunction
from .moments import parse_weight
from .oracle import reference_integral
from .problems import BUILTINS, builtin, eg3, eg3_exact
from .quadrature import OscillatoryProblem, integrate, integrate_piecewise

EXIT_OK, EXIT_ACCEPTANCE, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

TABLE1_KS = (1.0e3, 1.0e4, 1.0e5, 1.0e6, 1.0e7)
TABLE1_PS = (("2/3", 2.0 / 3.0), ("4/3", 4.0 / 3.0), ("2", 2.0), ("10", 10.0))
TABLE1_TOL = 5.0e-15


class UsageError(Exception):
    pass


def parse_sizes(text: str) -> list[int]:
    """``"8,16,32"`` or ``"8..128"`` (doubling from the first to the last)."""
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = (int(t) for t in text.split(".."))
            if lo < 1 or hi < lo:
                raise UsageError(f"bad size range {text!r}")
            ns = []
            n = lo
            while n <= hi:
                ns.append(n)
                n *= 2
        else:
            ns = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"cannot parse sizes {text!r}") from None
    if len(ns) < 2:
        raise UsageError("need >= 2 sizes")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise UsageError(f"sizes must be strictly increasing, got {ns}")
    return ns


def _parse_number(text: str, path: str, row: int) -> complex:
    text = (text or "").strip().replace(" ", "")
    try:
        return float(text)
    except ValueError:
        pass
    try:
        return complex(text)
    except ValueError:
        raise UsageError(f"{path}: row {row}: cannot parse {text!r} as a number") from None


def read_envelope_csv(path: str) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["f"]:
            raise UsageError(f"{path}: expected a single column with header 'f'")
        vals = [_parse_number(row["f"], path, i) for i, row in enumerate(reader)]
    arr = np.array(vals, dtype=complex)
    if len(arr) < 3:
        raise UsageError(f"{path}: need at least 3 samples (n >= 2), got {len(arr)}")
    return arr.real.copy() if np.all(arr.imag == 0) else arr


def _params(args) -> ExtensionParams:
    return ExtensionParams(args.r, args.q)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _load_builtin(args):
    return builtin(args.builtin, args.k, p=args.p, beta=args.beta)


def _builtin_reference(bp, mode: str) -> complex:
    if bp.name == "eg3" and mode in ("auto", "closed"):
        p = 1.0 / (1.0 + bp.pieces[0].weight.beta)
        return eg3_exact(bp.k, p)
    if mode == "closed":
        raise UsageError(f"no closed-form reference for {bp.name}")
    return complex(sum(reference_integral(piece) for piece in bp.pieces))


def cmd_integrate(args) -> int:
    weight = parse_weight(args.weight)
    params = _params(args)
    if args.builtin:
        bp = _load_builtin(args)
        pieces = bp.pieces
        value = integrate_piecewise(pieces, args.n, params)
    else:
        if args.file is None or args.a is None or args.b is None:
            raise UsageError("give --builtin, or --file with --a and --b")
        samples = read_envelope_csv(args.file)
        n = len(samples) - 1
        if args.n is not None and args.n != n:
            raise UsageError(f"--n {args.n} does not match the {n + 1} samples in {args.file}")
        grid = GridFunction(args.a, args.b, samples)
        problem = OscillatoryProblem(args.a, args.b, args.k, weight, grid)
        value = integrate(problem, n, params).value
        args.n = n
        bp = None
    cols = ["re", "im", "n", "r", "q"]
    row = [_fmt(value.real), _fmt(value.imag), str(args.n), str(params.r), str(params.q)]
    if args.reference != "none":
        if bp is None:
            raise UsageError("a reference needs a builtin problem (the oracle cannot use grid samples)")
        ref = _builtin_reference(bp, args.reference)
        cols += ["ref_re", "ref_im", "error"]
        row += [_fmt(ref.real), _fmt(ref.imag), _fmt(abs(value - ref))]
    print(",".join(cols))
    print(",".join(row))
    return EXIT_OK


def cmd_converge(args) -> int:
    ns = parse_sizes(args.ns)
    bp = _load_builtin(args)
    mode = "auto" if args.reference == "none" else args.reference
    ref = _builtin_reference(bp, mode)
    report = convergence_study(list(bp.pieces), _params(args), ns, ref)
    sys.stdout.write(report.to_csv())
    if bp.rate is not None:
        r = _params(args)
        print(f"# expected {_fmt(bp.rate(min(r.r, r.q)))}")
    return EXIT_OK


def table1_rows():
    """``(k, [error per p])`` for the constant-envelope algebraic example."""
    params = ExtensionParams(0)
    rows = []
    for k in TABLE1_KS:
        errs = []
        for _, p in TABLE1_PS:
            value = integrate(eg3(k, p).pieces[0], 2, params).value
            errs.append(abs(value - eg3_exact(k, p)))
        rows.append((k, errs))
    return rows


def cmd_table1(args) -> int:
    rows = table1_rows()
    print("k," + ",".join(f"p={label}" for label, _ in TABLE1_PS))
    bad = []
    for k, errs in rows:
        print(f"{k:.0f}," + ",".join(_fmt(e) for e in errs))
        bad += [(k, label, e) for (label, _), e in zip(TABLE1_PS, errs) if not e <= TABLE1_TOL]
    for k, label, e in bad:
        print(f"FAIL k={k:.0f} p={label}: error {_fmt(e)} > {TABLE1_TOL:g}", file=sys.stderr)
    return EXIT_ACCEPTANCE if bad else EXIT_OK


def cmd_wgrowth(args) -> int:
    if args.M < 1:
        raise UsageError(f"--M must be >= 1, got {args.M}")
    ns = parse_sizes(args.ns)
    report = growth_study(parse_weight(args.weight), (args.a, args.b), args.k, ns, args.M)
    sys.stdout.write(report.to_csv())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oscquad", description="Fourier-extension Filon quadrature")
    sub = parser.add_subparsers(dest="command", required=True)

    def problem_flags(p, file_input: bool):
        p.add_argument("--builtin", choices=sorted(BUILTINS), required=not file_input)
        p.add_argument("--p", type=float, help="exponent of the eg3 family (default 2)")
        p.add_argument("--beta", type=float, help="weight exponent of eg5 (default -1/2)")
        p.add_argument("--k", type=float, required=True)
        p.add_argument("--r", type=int, default=2)
        p.add_argument("--q", type=int, default=None, help="defaults to r")
        p.add_argument("--reference", choices=("none", "auto", "oracle", "closed"), default="none")

    p_int = sub.add_parser("integrate", help="approximate one integral")
    problem_flags(p_int, file_input=True)
    p_int.add_argument("--n", type=int)
    p_int.add_argument("--file", help="CSV with a single column 'f' of n+1 samples")
    p_int.add_argument("--a", type=float)
    p_int.add_argument("--b", type=float)
    p_int.add_argument("--weight", default="unit", help="weight of --file input (builtins carry their own)")
    p_int.set_defaults(func=cmd_integrate)

    p_conv = sub.add_parser("converge", help="error and fitted order over several n")
    problem_flags(p_conv, file_input=False)
    p_conv.add_argument("--ns", required=True, help="'8,16,32' or '8..128' (doubling)")
    p_conv.set_defaults(func=cmd_converge)

    p_tab = sub.add_parser("table1", help="constant-envelope algebraic table, n=2, r=0")
    p_tab.set_defaults(func=cmd_table1)

    p_wg = sub.add_parser("wgrowth", help="weight-growth functional over several n")
    p_wg.add_argument("--weight", required=True)
    p_wg.add_argument("--k", type=float, required=True)
    p_wg.add_argument("--ns", required=True)
    p_wg.add_argument("--M", type=int, default=300)
    p_wg.add_argument("--a", type=float, default=0.0)
    p_wg.add_argument("--b", type=float, default=1.0)
    p_wg.set_defaults(func=cmd_wgrowth)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "integrate" and args.builtin and args.n is None:
        parser.error("--n is required with --builtin")
    try:
        return args.func(args)
    except (UsageError, DomainError, GridError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OracleConvergenceError, NumericalError, RangeError, ConditioningError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
