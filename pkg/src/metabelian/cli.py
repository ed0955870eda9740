"""Command-line entry point.

Exit codes: 0 success, 1 a mathematically alarming result (certificate failed,
fixed points found, nontrivial kernel, law violation), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .ia_endo import alpha_n, apply, certify_no_fixed_points, load_endomorphism
from .magnus import WordSyntaxError, parse_word, phi
from .metabelian_lie import kernel_trivial_up_to
from .oracle import search_fixed_points

EXIT_OK, EXIT_ALARM, EXIT_USAGE = 0, 1, 2

DEFAULT_MAX_LEN = {3: 8, 4: 6}


class UsageError(Exception):
    pass


def _emit(data: dict, out) -> None:
    out.write(json.dumps(data, indent=2) + "\n")


def _rank(args, minimum: int) -> int:
    if args.n < minimum:
        raise UsageError(f"--n must be at least {minimum}, got {args.n}")
    return args.n


def _load_endo(path: str, n: int):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read endomorphism file {path}: {exc}") from exc
    if int(data.get("n", -1)) != n:
        raise UsageError(f"endomorphism file has n = {data.get('n')}, expected {n}")
    try:
        return load_endomorphism(data)
    except (KeyError, ValueError, IndexError) as exc:
        raise UsageError(f"invalid endomorphism in {path}: {exc}") from exc


def cmd_phi(args, out) -> int:
    n = _rank(args, 2)
    _emit(phi(parse_word(args.word, n)).to_json(), out)
    return EXIT_OK


def cmd_apply(args, out) -> int:
    n = _rank(args, 2)
    if args.endo:
        endo = _load_endo(args.endo, n)
    else:
        endo = alpha_n(_rank(args, 3))
    w = parse_word(args.word, n)
    _emit({"n": n, "word": str(w), "image": str(apply(endo, w))}, out)
    return EXIT_OK


def cmd_certify(args, out) -> int:
    cert = certify_no_fixed_points(_rank(args, 3))
    _emit(cert.to_json(), out)
    return EXIT_OK if cert.conclusion else EXIT_ALARM


def cmd_oracle(args, out) -> int:
    if args.endo:
        n = _rank(args, 2)
        endo = _load_endo(args.endo, n)
    else:
        n = _rank(args, 3)
        endo = alpha_n(n)
    max_len = args.max_len if args.max_len is not None else DEFAULT_MAX_LEN.get(n, 4)
    if max_len < 0:
        raise UsageError("--max-len must be >= 0")
    report = search_fixed_points(endo, max_len, workers=args.workers)
    _emit(report.to_json(), out)
    alarming = report.law_violations or (not args.endo and report.fixed_points_found)
    return EXIT_ALARM if alarming else EXIT_OK


def cmd_lie_kernel(args, out) -> int:
    n = _rank(args, 3)
    if args.max_degree < 1:
        raise UsageError("--max-degree must be >= 1")
    ok, table = kernel_trivial_up_to(n, args.max_degree)
    _emit({"n": n, "max_degree": args.max_degree, "kernel_trivial": ok,
           "degrees": table}, out)
    return EXIT_OK if ok else EXIT_ALARM


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metabelian",
        description="Exact computations in free metabelian groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phi", help="Magnus matrix of a word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("word")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("apply", help="apply an IA-endomorphism to a word")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--endo", help="JSON endomorphism file (default: alpha_n)")
    p.add_argument("word")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("certify", help="certify that alpha_n has no nontrivial fixed points")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("oracle", help="brute-force fixed-point search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--endo", help="JSON endomorphism file (default: alpha_n)")
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $METABELIAN_WORKERS or CPU count)")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("lie-kernel", help="graded kernel check for D_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(func=cmd_lie_kernel)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except WordSyntaxError as exc:
        err.write(f"error: {exc}\n")
        if exc.text:
            err.write(f"  {exc.text}\n  {' ' * exc.position}^\n")
        return EXIT_USAGE
    except (UsageError, ValueError, IndexError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
