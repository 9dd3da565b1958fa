"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 mathematical precondition failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

import numpy as np

from discfrac import operators
from discfrac.errors import DiscFracError, DomainError, InputError
from discfrac.kernels import build_kernel, invert_kernel, verify_inverse_pair
from discfrac.tableio import format_table, load_kernel_spec, read_table
from discfrac.theorems import check_ftc, check_leibniz, check_power_rule

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DOMAIN = 0, 1, 2, 3

KERNEL_OPS = {
    "gfs": operators.gfs,
    "rl-diff": operators.rl_diff,
    "caputo-diff": operators.caputo_diff,
}
ORDER_OPS = {
    "delta-sum": ("nu", operators.delta_fractional_sum),
    "nabla-sum": ("nu", operators.nabla_fractional_sum),
    "delta-diff": ("alpha", operators.delta_fractional_diff),
    "nabla-diff": ("alpha", operators.nabla_fractional_diff),
}


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        Path(output).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {output}: {exc.strerror}") from None


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _two_kernels(args: argparse.Namespace) -> tuple:
    if not args.kernel or len(args.kernel) != 2:
        raise InputError("give exactly two --kernel options (p, then q)")
    return load_kernel_spec(args.kernel[0]), load_kernel_spec(args.kernel[1])


def cmd_eval(args: argparse.Namespace) -> int:
    f = read_table(args.input)
    if args.op in KERNEL_OPS:
        if args.kernel is None:
            raise InputError(f"{args.op} needs --kernel")
        kernel = build_kernel(load_kernel_spec(args.kernel), len(f))
        out = KERNEL_OPS[args.op](kernel, f)
    else:
        name, fn = ORDER_OPS[args.op]
        order = getattr(args, name)
        if order is None:
            raise InputError(f"{args.op} needs --{name}")
        out = fn(f, order)
    _emit(format_table(out), args.output)
    return EXIT_OK


def cmd_verify_pair(args: argparse.Namespace) -> int:
    p_spec, q_spec = _two_kernels(args)
    p, q = build_kernel(p_spec, args.n), build_kernel(q_spec, args.n)
    report = verify_inverse_pair(p, q, args.tol)
    first = report.first_failure
    print(f"n = {args.n}, tol = {args.tol:g}")
    print(f"max |(p*q)[n] - 1| over 1 <= n < {args.n}: {report.max_residual:.3e}")
    print(f"first failing index: {'none' if first is None else first}")
    print(f"member: {'yes' if report.is_member else 'no'}")
    print()
    sys.stdout.write(_dump({
        "n": args.n,
        "tol": args.tol,
        "max_residual": report.max_residual,
        "first_failure": first,
        "is_member": report.is_member,
    }))
    return EXIT_OK if report.is_member else EXIT_FAIL


def cmd_invert(args: argparse.Namespace) -> int:
    spec = load_kernel_spec(args.kernel)
    n = args.n
    if n is None:
        n = len(spec.table) if spec.table is not None else 64
    q = invert_kernel(build_kernel(spec, n), n)
    _emit(_dump(q.spec.to_dict()), args.output)
    return EXIT_OK


def cmd_ftc_report(args: argparse.Namespace) -> int:
    p_spec, q_spec = _two_kernels(args)
    f = read_table(args.input)
    n = len(f)
    report = check_ftc(build_kernel(p_spec, n), build_kernel(q_spec, n), f, args.tol)

    print(f"horizon = {n}, tol = {args.tol:g}")
    print(f"pair residual max |(p*q)[n] - 1|: {report.pair_residual:.3e} "
          f"({'ok' if report.pair_ok else 'FAIL'})")
    print(f"{'identity':<16}{'same point':>14}{'one-step lag':>16}")
    for key, value in report.residuals.items():
        print(f"{key:<16}{value:>14.3e}{report.lagged[key]:>16.3e}")
    print(f"d1 at t = a: {report.residual_d1_at_anchor:.3e} (|f(a)| = {abs(f.values[0]):.3e})")
    print(f"pass: {'yes' if report.passed else 'no'} "
          f"(one-step lag: {'yes' if report.passed_lagged else 'no'})")
    print()
    sys.stdout.write(_dump(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_power_rule(args: argparse.Namespace) -> int:
    rows = []
    for mu in args.mu:
        for nu in args.nu:
            rows.append({"mu": mu, "nu": nu, "residual": check_power_rule(mu, nu, args.n)})
    ok = all(r["residual"] <= args.tol for r in rows)
    print(f"{'mu':>6}{'nu':>6}{'max rel residual':>20}")
    for r in rows:
        print(f"{r['mu']:>6g}{r['nu']:>6g}{r['residual']:>20.3e}")
    print()
    sys.stdout.write(_dump({"horizon": args.n, "tol": args.tol, "rows": rows, "pass": ok}))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_leibniz(args: argparse.Namespace) -> int:
    if args.input is not None:
        try:
            table = np.loadtxt(args.input, delimiter=",", ndmin=2)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot read matrix {args.input}: {exc}") from None
    else:
        rng = np.random.default_rng(args.seed)
        table = rng.uniform(-1.0, 1.0, (args.n + 1, args.n))
    residual = check_leibniz(table)
    ok = residual <= args.tol
    print(f"M = {table.shape[1]}, residual = {residual:.3e}, pass: {'yes' if ok else 'no'}")
    print()
    sys.stdout.write(_dump({"m": int(table.shape[1]), "residual": residual,
                            "tol": args.tol, "pass": bool(ok)}))
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discfrac",
        description="Generalized discrete fractional sums and differences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="apply an operator to a function table")
    p.add_argument("op", choices=[*KERNEL_OPS, *ORDER_OPS])
    p.add_argument("input", help="CSV table with header index,t,value")
    p.add_argument("--kernel", help="kernel spec (inline JSON or path)")
    p.add_argument("--nu", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--output", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("verify-pair", help="check (p*q)[n] = 1 for n >= 1")
    p.add_argument("--kernel", action="append", help="give twice: p, then q")
    p.add_argument("--n", type=int, default=128)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_verify_pair)

    p = sub.add_parser("invert", help="convolution inverse of a kernel, as a table spec")
    p.add_argument("--kernel", required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("ftc-report", help="fundamental-theorem residuals for a pair")
    p.add_argument("input", help="CSV table with header index,t,value")
    p.add_argument("--kernel", action="append", help="give twice: p, then q")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_ftc_report)

    p = sub.add_parser("power-rule", help="check the fractional power rule on a grid")
    p.add_argument("--mu", type=float, nargs="+", default=[0.0, 0.5, 1.2])
    p.add_argument("--nu", type=float, nargs="+", default=[0.5, 1.0, 1.7])
    p.add_argument("--n", type=int, default=32)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_power_rule)

    p = sub.add_parser("leibniz", help="check the discrete Leibniz rule")
    p.add_argument("input", nargs="?", help="CSV matrix of shape (M+1, M); random if omitted")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--n", type=int, default=64, help="M for a random table")
    p.add_argument("--tol", type=float, default=1e-11)
    p.set_defaults(func=cmd_leibniz)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except DiscFracError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
