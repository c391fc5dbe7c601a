"""Command-line front end.

Subcommands: semigroup, padic, orders, curve, two-branch, reproduce.
Exit codes: 0 success, 2 invalid input, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .curve import (
    MonomialSingularity,
    RationalCurve,
    SolutionDimensionMismatch,
    TotalMismatch,
    TwoBranchSingularity,
    UnibranchSingularity,
    _parse_point,
    weight_report,
)
from .exact import field_of_characteristic
from .gallery import SCENARIOS, ScenarioMismatch
from .numsg import NumericalSemigroup
from .padic import (
    classicality_product_test,
    monomial_order_sequence,
    satisfies_p_adic_criterion,
    uses_all_weight,
)
from .valsg2 import NotClosed, NotGorenstein, validate_ring, value_semigroup

USER_ERROR = 2
INTERNAL_ERROR = 3


def _ints(text):
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected a comma-separated integer list")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="weierforge",
        description="Exact Weierstrass weights on rational Gorenstein curves.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sg = sub.add_parser("semigroup", help="numerical semigroup invariants",
                          parents=[common])
    group = p_sg.add_mutually_exclusive_group(required=True)
    group.add_argument("--gens", type=_ints, help="generators, e.g. 3,4")
    group.add_argument("--gaps", type=_ints, help="gap set, e.g. 1,2,5")

    p_pa = sub.add_parser("padic", parents=[common], help="digitwise criterion and classicality tests")
    p_pa.add_argument("--p", type=int, required=True)
    group = p_pa.add_mutually_exclusive_group(required=True)
    group.add_argument("--seq", type=_ints, help="sequence for the digit criterion")
    group.add_argument("--gaps", type=_ints,
                       help="gap sequence: runs the classicality and full-weight tests")

    p_or = sub.add_parser("orders", parents=[common], help="order sequence of a monomial morphism")
    p_or.add_argument("--exponents", type=_ints, required=True)
    p_or.add_argument("--p", type=int, default=0)

    p_cv = sub.add_parser("curve", parents=[common], help="weight report for a curve description file")
    p_cv.add_argument("file", help="JSON curve description")
    p_cv.add_argument("--char", type=int, default=None,
                      help="override the characteristic in the file")

    p_tb = sub.add_parser("two-branch", parents=[common], help="value semigroup of a two-branch ring")
    p_tb.add_argument("file", help="JSON ring description")

    p_rp = sub.add_parser("reproduce", parents=[common], help="run a named built-in scenario")
    p_rp.add_argument("name", help="scenario name, or 'all'; use 'list' to enumerate")
    p_rp.add_argument("--char", type=int, default=None,
                      help="characteristic filter where a scenario supports several")
    return parser


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_semigroup(args):
    S = (NumericalSemigroup.from_generators(args.gens) if args.gens
         else NumericalSemigroup.from_gaps(args.gaps))
    data = S.to_json()
    lines = [
        "semigroup %s" % S,
        "gaps: %s" % (", ".join(map(str, S.gaps)) or "none"),
        "conductor: %d   genus: %d" % (S.conductor, S.genus),
        "symmetric: %s   weight: %d" % (data["symmetric"], data["weight"]),
    ]
    _emit(args, data, lines)
    return 0


def _cmd_padic(args):
    p = args.p
    if args.seq is not None:
        ok = satisfies_p_adic_criterion(args.seq, p)
        payload = {"p": p, "sequence": args.seq, "satisfies_criterion": ok}
        _emit(args, payload, ["sequence %s %s the %d-adic criterion"
                              % (args.seq, "satisfies" if ok else "violates", p)])
        return 0
    gaps = args.gaps
    classical = classicality_product_test(gaps, p)
    full = uses_all_weight(gaps, p)
    payload = {"p": p, "gaps": gaps, "classical_product_test": classical,
               "uses_all_weight": full}
    _emit(args, payload, [
        "gaps %s at p = %d" % (gaps, p),
        "classicality product test: %s" % classical,
        "singularity uses all the weight: %s" % full,
    ])
    return 0


def _cmd_orders(args):
    orders = monomial_order_sequence(args.exponents, args.p)
    payload = {"p": args.p, "exponents": args.exponents, "orders": list(orders)}
    _emit(args, payload, ["orders: %s" % (", ".join(map(str, orders)))])
    return 0


def _load_series(field, data):
    return [field(str(c)) for c in data]


def _curve_from_json(data, char_override=None):
    characteristic = data.get("characteristic", 0)
    if char_override is not None:
        characteristic = char_override
    field = field_of_characteristic(characteristic)
    singularities = []
    for item in data["singularities"]:
        kind = item["kind"]
        if kind == "monomial":
            S = NumericalSemigroup.from_generators(item["generators"])
            loc = _parse_point(field, item["location"])
            singularities.append(MonomialSingularity(field, S, loc))
        elif kind == "unibranch":
            loc = _parse_point(field, item["location"])
            basis = [_load_series(field, b) for b in item["basis"]]
            singularities.append(
                UnibranchSingularity(field, basis, item["conductor"], loc))
        elif kind == "two-branch":
            locs = tuple(_parse_point(field, q) for q in item["locations"])
            xi1, xi2 = item["conductor"]
            pairs = [(_load_series(field, bt), _load_series(field, bu))
                     for bt, bu in item["basis"]]
            ring = validate_ring(field, pairs, (xi1, xi2))
            singularities.append(TwoBranchSingularity(ring, locs))
        else:
            raise ValueError("unknown singularity kind %r" % kind)
    return RationalCurve(field, singularities)


def _cmd_curve(args):
    with open(args.file) as fh:
        data = json.load(fh)
    X = _curve_from_json(data, args.char)
    rep = weight_report(X)
    payload = rep.to_json()
    lines = ["characteristic %d, genus %d" % (X.characteristic, X.genus),
             "orders: %s   N = %d" % (", ".join(map(str, rep.orders)), rep.N)]
    for entry in payload["weights"]:
        lines.append("weight at %s: %d" % (entry["location"], entry["weight"]))
    for entry in payload["smooth"]:
        lines.append("smooth points at %s: weight %d, %d point(s)"
                     % (entry["factor"], entry["multiplicity"], entry["degree"]))
    lines.append("total weight: %d (expected %d)" % (rep.total, rep.expected))
    _emit(args, payload, lines)
    return 0


def _cmd_two_branch(args):
    with open(args.file) as fh:
        data = json.load(fh)
    field = field_of_characteristic(data.get("characteristic", 0))
    xi1, xi2 = data["conductor"]
    pairs = [(_load_series(field, bt), _load_series(field, bu))
             for bt, bu in data["basis"]]
    ring = validate_ring(field, pairs, (xi1, xi2), strict=data.get("strict", True))
    S2 = value_semigroup(ring)
    payload = S2.to_json()
    lines = [
        "conductor: (%d, %d)   delta: %d" % (xi1, xi2, S2.delta),
        "maximal points: %s   I = %d" % (payload["maximals"], S2.I),
        "branch semigroups: %s (delta1 %d), %s (delta2 %d)"
        % (S2.S1, S2.delta1, S2.S2, S2.delta2),
        "symmetric: %s" % payload["symmetric"],
    ]
    _emit(args, payload, lines)
    return 0


def _cmd_reproduce(args):
    if args.name == "list":
        for name in sorted(SCENARIOS):
            print(name)
        return 0
    names = sorted(SCENARIOS) if args.name == "all" else [args.name]
    results = []
    for name in names:
        if name not in SCENARIOS:
            raise ValueError("unknown scenario %r; try 'reproduce list'" % name)
        runner = SCENARIOS[name]
        if name == "example-2.9" and args.char is not None:
            results.append(runner(args.char))
        else:
            results.append(runner())
    payload = results[0] if len(results) == 1 else results
    lines = []
    for res in results:
        lines.append("%s: ok" % res["scenario"])
        rep = res.get("report")
        if rep is None and res.get("runs"):
            for run in res["runs"]:
                r = run["report"]
                lines.append("  characteristic %d: weights %s, total %d"
                             % (run["characteristic"],
                                [e["weight"] for e in r["weights"]], r["total"]))
        elif rep is not None:
            lines.append("  orders %s; weights %s; smooth %s; total %d"
                         % (rep["orders"], [e["weight"] for e in rep["weights"]],
                            rep["smooth"], rep["total"]))
    _emit(args, payload, lines)
    return 0


_COMMANDS = {
    "semigroup": _cmd_semigroup,
    "padic": _cmd_padic,
    "orders": _cmd_orders,
    "curve": _cmd_curve,
    "two-branch": _cmd_two_branch,
    "reproduce": _cmd_reproduce,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (TotalMismatch, ScenarioMismatch, AssertionError) as exc:
        print("internal invariant failure: %s" % exc, file=sys.stderr)
        return INTERNAL_ERROR
    except (ValueError, KeyError, OSError, ZeroDivisionError,
            NotClosed, NotGorenstein, SolutionDimensionMismatch,
            json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USER_ERROR


if __name__ == "__main__":
    sys.exit(main())
