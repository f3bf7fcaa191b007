"""Command-line front end.

Exit codes: 0 success, 1 invalid input or over budget, 2 internal
inconsistency found by ``verify``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys

from .constants import theorem_constant
from .lcm_engine import (
    ResourceError,
    check_budget,
    factor_window_sieve,
    lcm_fold,
    log_lcm,
    squarefull_split,
    window,
    window_terms,
)
from .ntk import SpecError, normalize
from .report import CONVERGE_METHODS, compute_log_lcm, converge, fmt
from .residue_decomp import assemble_log_lcm, estimate_log_lcm, theta
from .verify import run_all

DEFAULT_MAX_SIEVE = 10**8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_n(text: str) -> int:
    text = text.strip()
    m = re.fullmatch(r"(\d+)\^(\d+)", text)
    if m:
        return int(m.group(1)) ** int(m.group(2))
    m = re.fullmatch(r"(\d+)[eE](\d+)", text)
    if m:
        return int(m.group(1)) * 10 ** int(m.group(2))
    if text.isdigit():
        return int(text)
    raise argparse.ArgumentTypeError(f"not a positive integer: {text!r}")


def parse_grid(text: str) -> list[int]:
    return [parse_n(part) for part in text.split(",") if part.strip()]


def _default_threads() -> int:
    raw = os.environ.get("LCMLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lcmlab", description="lcm of consecutive arithmetic-progression terms")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def spec_args(p, with_n=False):
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        p.add_argument("--l", type=int, required=True)
        p.add_argument("--m", type=int, required=True)
        if with_n:
            p.add_argument("--n", type=parse_n, required=True)

    def common(p, formats=("json",)):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", metavar="PATH")
        p.add_argument("--threads", type=int, default=_default_threads())
        p.add_argument("--max-sieve", type=parse_n, default=DEFAULT_MAX_SIEVE)

    p = sub.add_parser("constant", help="exact asymptotic constant A")
    spec_args(p)
    common(p, ("json", "csv"))

    p = sub.add_parser("lcm", help="exact lcm of one window")
    spec_args(p, with_n=True)
    p.add_argument("--method", choices=("sieve", "gcd-fold"), default="sieve")
    common(p, ("json", "csv"))

    p = sub.add_parser("logl", help="log lcm with its decomposition")
    spec_args(p, with_n=True)
    p.add_argument("--method", choices=("sieve", "theta-intervals", "gcd-fold"), default="sieve")
    common(p)

    p = sub.add_parser("primes", help="prime-power support of the window lcm")
    spec_args(p, with_n=True)
    p.add_argument("--residue", type=int, help="keep primes = residue (mod a1)")
    common(p, ("json", "csv"))

    p = sub.add_parser("theta", help="sum of log p over primes p <= x, p = k mod h")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    common(p)

    p = sub.add_parser("converge", help="log L(n)/n against A over an n grid")
    spec_args(p)
    p.add_argument("--n-grid", type=parse_grid, required=True)
    p.add_argument("--method", choices=CONVERGE_METHODS, default="sieve")
    common(p, ("csv", "json"))

    p = sub.add_parser("verify", help="exhaustive consistency checks over small grids")
    p.add_argument("--grid-small", action="store_true")
    p.add_argument("--output", metavar="PATH")
    return parser


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_constant(args, spec) -> str:
    const = theorem_constant(spec)
    if args.format == "csv":
        rows = [(r, k, str(ar), fmt(float(ar))) for r, (k, ar) in sorted(const.breakdown.items())]
        return _csv(("r", "K_r", "A_r", "A_r_float"), rows)
    return _json({"spec": spec.as_dict(), **const.to_json()})


def cmd_lcm(args, spec) -> str:
    check_budget(spec, args.n, args.max_sieve)
    if args.method == "gcd-fold":
        value = lcm_fold(window_terms(spec, args.n))
    else:
        value = factor_window_sieve(spec, args.n, threads=args.threads).reconstruct()
    logv = math.log(value)
    if args.format == "csv":
        return _csv(("n", "lcm", "log_lcm"), [(args.n, value, fmt(logv))])
    return _json({"spec": spec.as_dict(), "n": args.n, "method": args.method,
                  "lcm": str(value), "log_lcm": logv})


def cmd_logl(args, spec) -> str:
    n = args.n
    check_budget(spec, n, args.max_sieve)
    out = {"spec": spec.as_dict(), "n": n, "method": args.method}
    if args.method == "sieve":
        pmap = factor_window_sieve(spec, n, threads=args.threads)
        first, corr = squarefull_split(pmap, window(spec, n).term_hi)
        out.update(log_lcm=log_lcm(pmap), first_power_sum=first, correction=corr)
    elif args.method == "theta-intervals":
        parts = assemble_log_lcm(spec, n, "theta-intervals")
        out.update(
            log_lcm=parts.total,
            residue_sums={str(r): v for r, v in sorted(parts.per_residue.items())},
            correction=parts.correction,
            log_d=parts.log_d,
        )
    else:
        out["log_lcm"] = compute_log_lcm(spec, n, "gcd-fold")
    const = theorem_constant(spec).value
    out.update(ratio=out["log_lcm"] / n, constant=str(const), estimate=estimate_log_lcm(spec, n))
    return _json(out)


def cmd_primes(args, spec) -> str:
    check_budget(spec, args.n, args.max_sieve)
    pmap = factor_window_sieve(spec, args.n, threads=args.threads)
    if args.residue is not None:
        pmap = pmap.restrict(spec.a1, args.residue)
    if args.format == "csv":
        return _csv(("p", "exponent", "residue"), [(p, e, p % spec.a1) for p, e in pmap.items()])
    return _json({"spec": spec.as_dict(), "n": args.n,
                  "primes": {str(p): e for p, e in pmap.items()}})


def cmd_theta(args) -> str:
    if args.x > args.max_sieve:
        raise ResourceError(f"x={args.x} exceeds sieve budget {args.max_sieve}")
    return _json({"x": args.x, "h": args.h, "k": args.k, "theta": theta(args.x, args.h, args.k)})


def cmd_converge(args, spec) -> str:
    report = converge(spec, args.n_grid, args.method, threads=args.threads, max_bound=args.max_sieve)
    return report.dumps(args.format)


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"lcmlab: {exc}", file=sys.stderr)
        return 1

    if args.command == "verify":
        lines: list[str] = []
        results = run_all(small=args.grid_small, log=lines.append)
        total = sum(r.checks for r in results)
        bad = [f for r in results for f in r.failures]
        lines.extend(f"  {msg}" for msg in bad[:20])
        lines.append(f"all {total} checks passed" if not bad else f"{len(bad)} of {total} checks failed")
        _emit("\n".join(lines) + "\n", args.output)
        return 0 if not bad else 2

    try:
        if args.command == "theta":
            text = cmd_theta(args)
        else:
            spec = normalize(args.a, args.b, args.l, args.m)
            handler = {
                "constant": cmd_constant,
                "lcm": cmd_lcm,
                "logl": cmd_logl,
                "primes": cmd_primes,
                "converge": cmd_converge,
            }[args.command]
            text = handler(args, spec)
    except (SpecError, ResourceError, ValueError) as exc:
        print(f"lcmlab: {exc}", file=sys.stderr)
        return 1
    _emit(text, args.output)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
