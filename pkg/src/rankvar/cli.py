"""Command line driver.

Exit codes: 0 success / property pass, 1 property failure, 2 input error.
"""

import argparse
import json
import sys

from .errors import RankvarError
from .fields import FiniteField
from .grobner import generic_point, parse_ideal
from .homological import ext_dim, carlson_module, koszul_object, parse_coh_class
from .modules import AlgebraSpec, load_module, module_to_json
from .pipoints import jordan_type, make_pi_point, support_report
from .suites import SuiteConfig, run_suite


def _enum_field(q, p):
    q = int(q)
    d = 0
    n = q
    while n > 1 and n % p == 0:
        n //= p
        d += 1
    if n != 1 or d == 0:
        raise RankvarError(f"field size {q} is not a power of p = {p}")
    return FiniteField(p, d)


def _emit(data):
    json.dump(data, sys.stdout, indent=1, sort_keys=True)
    sys.stdout.write("\n")


def cmd_jordan(args):
    m = load_module(args.module)
    pt = make_pi_point(m.spec, args.pi_point)
    parts = jordan_type(pt, m)
    print(",".join(str(s) for s in parts))
    return 0


def cmd_support(args, with_cosupport=False):
    m = load_module(args.module)
    field = _enum_field(args.field, m.spec.p)
    rep = support_report(
        m, field, with_cosupport=with_cosupport, twist=args.twist
    )
    _emit(rep.to_json())
    return 0


def cmd_cosupport(args):
    return cmd_support(args, with_cosupport=True)


def _build_spec(args):
    return AlgebraSpec(args.p, args.r, FiniteField(args.p, 1), args.flavor)


def cmd_carlson(args):
    spec = _build_spec(args)
    cls = parse_coh_class(spec, args.cls)
    _emit(module_to_json(carlson_module(cls)))
    return 0


def cmd_koszul(args):
    m = load_module(args.module)
    classes = [parse_coh_class(m.spec, text) for text in args.cls]
    _emit(module_to_json(koszul_object(m, classes)))
    return 0


def cmd_ext(args):
    m = load_module(args.module)
    n = load_module(args.other)
    dims = {i: ext_dim(m, n, i) for i in range(1, args.ext_bound + 1)}
    _emit({"schema": "v1", "ext_dims": dims})
    return 0


def cmd_generic_point(args):
    with open(args.ideal) as fh:
        text = fh.read()
    field = FiniteField(args.p, 1)
    data = generic_point(parse_ideal(text, field))
    _emit(data.to_json())
    return 0 if data.all_pass() else 1


def cmd_verify(args):
    config = SuiteConfig(
        p=args.p,
        r=args.r,
        flavor=args.flavor,
        seed=args.seed,
        count=args.count,
        pairs=args.pairs,
        ext_bound=args.ext_bound,
        twist=args.twist,
    )
    report = run_suite(args.suite, config)
    _emit(report)
    return 0 if report["passed"] else 1


def _add_spec_flags(sp):
    sp.add_argument("-p", type=int, default=2, help="characteristic (default 2)")
    sp.add_argument("-r", type=int, default=2, help="number of generators (default 2)")
    sp.add_argument(
        "--flavor",
        choices=("grouplike", "primitive"),
        default="grouplike",
        help="Hopf flavor used by tensor and Hom constructions",
    )


def build_parser():
    top = argparse.ArgumentParser(
        prog="rankvar",
        description="Exact pi-point support and Jordan type computations "
        "for modules over K[z1..zr]/(z^p).",
    )
    sub = top.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("jordan", help="Jordan type of a module at a pi-point")
    sp.add_argument("module", help="module JSON file")
    sp.add_argument("pi_point", help="pi-point polynomial in z1..zr")
    sp.set_defaults(func=cmd_jordan)

    for name, fn in (("support", cmd_support), ("cosupport", cmd_cosupport)):
        sp = sub.add_parser(name, help=f"{name} report over P^(r-1)")
        sp.add_argument("module", help="module JSON file")
        sp.add_argument("--field", default="2", help="enumeration field size q")
        sp.add_argument("--twist", type=int, default=0, help="Frobenius twist exponent")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("carlson", help="Carlson module of a cohomology class")
    sp.add_argument("cls", help="homogeneous polynomial in y1..yr")
    _add_spec_flags(sp)
    sp.set_defaults(func=cmd_carlson)

    sp = sub.add_parser("koszul", help="Koszul object of a module and classes")
    sp.add_argument("module", help="module JSON file")
    sp.add_argument("cls", nargs="+", help="homogeneous polynomials in y1..yr")
    sp.set_defaults(func=cmd_koszul)

    sp = sub.add_parser("ext", help="dimensions of Ext^i(M,N)")
    sp.add_argument("module", help="module JSON file for M")
    sp.add_argument("other", help="module JSON file for N")
    sp.add_argument("--ext-bound", type=int, default=10, help="largest degree i")
    sp.set_defaults(func=cmd_ext)

    sp = sub.add_parser("generic-point", help="generic closed point certificates")
    sp.add_argument("ideal", help="ideal text file, one polynomial per line")
    sp.add_argument("-p", type=int, default=2, help="ground field characteristic")
    sp.set_defaults(func=cmd_generic_point)

    sp = sub.add_parser("verify", help="run a named verification suite")
    sp.add_argument("suite", help="suite name, e.g. dade or generic-points")
    _add_spec_flags(sp)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=40, help="corpus size")
    sp.add_argument("--pairs", type=int, default=25, help="number of module pairs")
    sp.add_argument("--ext-bound", type=int, default=10)
    sp.add_argument("--twist", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    return top


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RankvarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
