"""Command-line interface: ``juddian <subcommand> ...``."""

from __future__ import annotations

import argparse
import contextlib
import sys
from fractions import Fraction
from typing import List, Optional

from . import analysis, gfunction, search, suites
from .config import RunConfig, load_config
from .constraint_poly import ExactCapExceeded, eval_exact, kus_polynomial, restrict_to_x_axis, restrict_to_y_axis
from .emit import write_rows
from .tridiag import build_A, count_at_most, eigenvalues, eigenvalues_in


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="key=value file overriding defaults")
    p.add_argument("--format", choices=["csv", "json"], help="output format for tabular data")
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    p.add_argument("--threads", type=int, help="cap on worker threads")
    p.add_argument("--bisect-tol", type=float, help="relative bisection tolerance")
    p.add_argument("--residual-tol", type=float, help="acceptance threshold for Juddian residuals")
    p.add_argument("--pole-guard", type=float, help="excluded radius around integer z")
    p.add_argument("--exact-cap", type=int, help="largest n for exact polynomial construction")
    p.add_argument("--grid", dest="scan_grid", type=int, help="crossing scan grid size")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="juddian", description="Constraint polynomials and Juddian points of the quantum Rabi model.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("poly", parents=[common], help="print P_n as JSON, evaluate it, or restrict it to an axis")
    p.add_argument("n", type=int)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--eval", nargs=2, metavar=("X", "Y"), help="exact rational evaluation")
    g.add_argument("--restrict", choices=["x", "y"], help="P_n(x, 0) or P_n(0, Y)")

    p = sub.add_parser("zeros", parents=[common], help="zeros alpha_k(y) of x -> P_N(x, y)")
    p.add_argument("N", type=int)
    p.add_argument("y", type=float)
    p.add_argument("--range", nargs=2, type=float, metavar=("LO", "HI"), help="only zeros in (LO, HI]")

    p = sub.add_parser("density", parents=[common], help="Juddian counts g <= gamma for each N")
    p.add_argument("delta", type=float)
    p.add_argument("gamma", type=float)
    p.add_argument("N", type=int, nargs="+")

    p = sub.add_parser("doublejudd", parents=[common], help="parameters with Juddian eigenvalues m - g^2 and N - g^2")
    p.add_argument("m", type=int)
    p.add_argument("N", type=int)

    p = sub.add_parser("gscan", parents=[common], help="sample G_+ and G_- on a z grid")
    p.add_argument("z_lo", type=float)
    p.add_argument("z_hi", type=float)
    p.add_argument("n", type=int, help="number of samples")
    p.add_argument("g", type=float)
    p.add_argument("delta", type=float)

    p = sub.add_parser("branch", parents=[common], help="polyline y,x of the branch Z_{n,m}")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--steps", type=int, default=101)

    p = sub.add_parser("verify", parents=[common], help="run self-check suites")
    p.add_argument("suite", choices=["weyl", "interlace", "oracle", "all"])
    p.add_argument("--n", type=int, default=12, help="oracle: largest n")
    p.add_argument("--points", type=int, default=20, help="oracle: random points per n")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--N", type=int, default=200)
    p.add_argument("--y", type=float, default=None)
    p.add_argument("--m", type=int, default=0, help="interlace: minor offset (default ceil(N^(1/4)))")
    return parser


def _rational(text: str) -> Fraction:
    return Fraction(text)


def cmd_poly(args, cfg: RunConfig, out) -> int:
    if args.eval:
        p = kus_polynomial(args.n, cfg.exact_cap)
        out.write(str(eval_exact(p, _rational(args.eval[0]), _rational(args.eval[1]))) + "\n")
    elif args.restrict == "y":
        out.write(restrict_to_y_axis(args.n, cfg.exact_cap).to_json(args.n, "y") + "\n")
    elif args.restrict == "x":
        out.write(restrict_to_x_axis(args.n, cfg.exact_cap).to_json(args.n, "x") + "\n")
    else:
        out.write(kus_polynomial(args.n, cfg.exact_cap).to_json(args.n) + "\n")
    return 0


def cmd_zeros(args, cfg: RunConfig, out) -> int:
    T = build_A(args.N, args.y)
    if args.range:
        lo, hi = args.range
        vals = eigenvalues_in(T, lo, hi, rel_tol=cfg.bisect_tol)
        first = count_at_most(T, lo) + 1
    else:
        vals = eigenvalues(T, rel_tol=cfg.bisect_tol)
        first = 1
    rows = [{"k": first + j, "alpha": float(v)} for j, v in enumerate(vals)]
    write_rows(out, ["k", "alpha"], rows, cfg.format)
    return 0


def cmd_density(args, cfg: RunConfig, out) -> int:
    recs = analysis.density_scan(args.delta, args.gamma, args.N, threads=cfg.thread_count())
    header = ["N", "delta", "gamma", "count", "asymptotic", "ratio"]
    write_rows(out, header, [vars(r) for r in recs], cfg.format)
    return 0


def cmd_doublejudd(args, cfg: RunConfig, out) -> int:
    pts = search.find_double_juddian(args.m, args.N, tol=cfg.residual_tol, grid=cfg.scan_grid, threads=cfg.thread_count())
    for p in pts:
        out.write(p.to_json() + "\n")
    return 0 if all(p.certified(cfg.residual_tol) for p in pts) else 1


def cmd_gscan(args, cfg: RunConfig, out) -> int:
    samples = gfunction.g_scan(args.z_lo, args.z_hi, args.n, args.g, args.delta, pole_guard=cfg.pole_guard)
    header = ["z", "g_plus", "g_minus", "converged", "truncation_n"]
    write_rows(out, header, [vars(s) for s in samples], cfg.format)
    return 0


def cmd_branch(args, cfg: RunConfig, out) -> int:
    br = search.trace_branch(args.n, args.m, args.steps)
    rows = [{"y": float(y), "x": float(x)} for x, y in br.points]
    write_rows(out, ["y", "x"], rows, cfg.format)
    return 0


def cmd_verify(args, cfg: RunConfig, out) -> int:
    names = ["oracle", "weyl", "interlace"] if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        if name == "oracle":
            results.append(suites.oracle_suite(args.n, args.points, args.seed))
        elif name == "weyl":
            results.append(suites.weyl_suite(args.N, 2.0 if args.y is None else args.y))
        else:
            results.append(suites.interlace_suite(args.N, args.m, 0.5 if args.y is None else args.y))
    for r in results:
        for line in r.lines:
            out.write(line + "\n")
    code = suites.exit_code(results)
    failed = [r.name for r in results if not r.ok]
    out.write(("FAILED: " + ",".join(failed) if failed else "ALL PASS") + "\n")
    return code


COMMANDS = {
    "poly": cmd_poly,
    "zeros": cmd_zeros,
    "density": cmd_density,
    "doublejudd": cmd_doublejudd,
    "gscan": cmd_gscan,
    "branch": cmd_branch,
    "verify": cmd_verify,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            format=args.format,
            output=args.output,
            threads=args.threads,
            bisect_tol=args.bisect_tol,
            residual_tol=args.residual_tol,
            pole_guard=args.pole_guard,
            exact_cap=args.exact_cap,
            scan_grid=args.scan_grid,
        )
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    with contextlib.ExitStack() as stack:
        out = stack.enter_context(open(cfg.output, "w", newline="\n")) if cfg.output else sys.stdout
        try:
            return COMMANDS[args.cmd](args, cfg, out)
        except (ExactCapExceeded, ValueError, gfunction.PoleGuardError) as exc:
            print(f"juddian: error: {exc}", file=sys.stderr)
            return 2


if __name__ == "__main__":
    sys.exit(main())
