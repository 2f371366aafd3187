"""Command-line entry point."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import local_nonarch as ln
from .local_arch import arch_quadrature_check
from .modforms import KohnenForm
from .quadfields import characters, class_group
from .report import exact_report
from .verifier import ConfigError, SuiteConfig, load_config, run_suite, sk_ratio_check, suite_passed


def _emit(reports, as_json: bool) -> int:
    if as_json:
        print(json.dumps([r.to_json() for r in reports], indent=2))
    else:
        for r in reports:
            print(r.line())
    return 0 if suite_passed(reports) else 1


def cmd_local_unram(args) -> int:
    if args.type == "IIb" and args.l != 1:
        print("type IIb forces l = +1", file=sys.stderr)
        return 2
    value = ln.j_spherical_ramified(None, args.type, args.l)
    target = 1 if args.type == "I" else 2
    return _emit([exact_report("local-unram", value, target, {"type": args.type, "l": args.l})], args.json)


def cmd_local_table(args) -> int:
    from .verifier import check_local_table
    return _emit(check_local_table(), args.json)


def cmd_local_coset(args) -> int:
    c = ln.classify_double_coset(Fraction(args.x), Fraction(args.y), Fraction(args.z), Fraction(args.u), args.p)
    print(f"h({c.ell},{c.m})")
    return 0


def cmd_class_group(args) -> int:
    G = class_group(args.d)
    print(f"d = {G.disc}  h = {G.h}  structure = {G.invariant_factors or [1]}")
    print("generators: " + " ".join(str(g) for g in G.generators))
    for f in G.classes:
        print(f"{f}  {list(G.coords[f])}")
    return 0


def cmd_class_chars(args) -> int:
    G = class_group(args.d)
    chars = characters(G)
    print("classes: " + " ".join(str(f) for f in G.classes))
    for chi in chars:
        vals = [complex(chi(f)) for f in G.classes]
        print(f"{list(chi.exponents)}: " + " ".join(f"{v.real:+.4f}{v.imag:+.4f}i" for v in vals))
    return 0


def cmd_sk_coeffs(args) -> int:
    K = KohnenForm.from_jacobi(args.k, args.dmax)
    for D in range(args.dmax + 1):
        if D % 4 in (0, 3):
            print(D, K(D))
    return 0


def cmd_sk_ratio(args) -> int:
    return _emit([sk_ratio_check(args.k, args.d1, args.d2, args.tol)], args.json)


def cmd_arch_check(args) -> int:
    return _emit([arch_quadrature_check(args.k, args.tol)], args.json)


def cmd_suite(args) -> int:
    try:
        config = load_config(args.config) if args.config else SuiteConfig.default()
    except ConfigError as exc:
        print(f"{args.config}: {exc}", file=sys.stderr)
        return 2
    if args.json_out:
        config.json_path = args.json_out
    if args.jobs:
        config.jobs = args.jobs
    reports = run_suite(config)
    for r in reports:
        print(r.line())
    ok = suite_passed(reports)
    print(f"{sum(r.passed for r in reports)}/{len(reports)} checks passed")
    return 0 if ok else 1


def _sign(text: str) -> int:
    v = int(text)
    if v not in (1, -1):
        raise argparse.ArgumentTypeError("must be +1 or -1")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="boecherer", description="Exact and numerical checks for Bessel periods of Siegel modular forms")
    sub = parser.add_subparsers(dest="command", required=True)

    local = sub.add_parser("local", help="non-archimedean local factors").add_subparsers(dest="sub", required=True)
    p = local.add_parser("unram", help="spherical vector, ramified K: J = 1 (type I) or 2 (IIb)")
    p.add_argument("--type", choices=["I", "IIb"], default="I")
    p.add_argument("--l", type=_sign, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_local_unram)
    p = local.add_parser("table", help="J0 and J for P1-fixed vectors")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_local_table)
    p = local.add_parser("coset", help="double coset h(l, m) of n(X) diag(1,u,u,1)")
    for name in ("x", "y", "z", "u"):
        p.add_argument(f"--{name}", required=True, help="rational, e.g. 1/9")
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_local_coset)

    cls = sub.add_parser("class", help="class groups of imaginary quadratic fields").add_subparsers(dest="sub", required=True)
    for name, func in (("group", cmd_class_group), ("chars", cmd_class_chars)):
        p = cls.add_parser(name)
        p.add_argument("-d", type=int, required=True)
        p.set_defaults(func=func)

    sk = sub.add_parser("sk", help="Saito-Kurokawa lifts").add_subparsers(dest="sub", required=True)
    p = sk.add_parser("coeffs", help="Kohnen plus-space coefficients c(D)")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--dmax", type=int, default=30)
    p.set_defaults(func=cmd_sk_coeffs)
    p = sk.add_parser("ratio", help="coefficient ratio vs L-value ratio")
    p.add_argument("-k", type=int, default=10)
    p.add_argument("--d1", type=int, required=True)
    p.add_argument("--d2", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sk_ratio)

    arch = sub.add_parser("arch", help="archimedean integral").add_subparsers(dest="sub", required=True)
    p = arch.add_parser("check")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_arch_check)

    p = sub.add_parser("suite", help="run the configured checks")
    p.add_argument("--config")
    p.add_argument("--json", dest="json_out")
    p.add_argument("--jobs", type=int, default=0)
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
