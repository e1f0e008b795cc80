"""Command-line interface.

    pnf field-info -p P -k K -n N           tower and generator data
    pnf check -p P -k K -n N                membership report (JSON)
    pnf scan --p-range A..B ...             grid scan (CSV or JSON lines)
    pnf sums -p P -k K -n N                 the sixteen grouped sums
    pnf verify [--full]                     invariant suite

Exit codes: 0 success, 1 invariant or bound failure, 2 usage error.
The environment variable PNF_CACHE, when set, names a persistent
factorization cache file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import arith, characters, criterion, cyclo, ff, harness
from .config import DEFAULT_CAPS, SizeCaps
from .errors import BoundViolated, ToolkitError


def _parse_range(text):
    try:
        lo, hi = text.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _caps_from_args(args):
    return SizeCaps(
        enumeration_cap=getattr(args, "enum_cap", DEFAULT_CAPS.enumeration_cap),
        character_cap=getattr(args, "char_cap", DEFAULT_CAPS.character_cap),
    )


def _add_pkn(sub):
    sub.add_argument("-p", type=int, required=True, help="characteristic (prime)")
    sub.add_argument("-k", type=int, default=1, help="degree of F_q over F_p")
    sub.add_argument("-n", type=int, required=True, help="degree of the extension over F_q")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="pnf",
        description="Primitive-normal pair verification toolkit for F_{q^n}.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p_info = sub.add_parser("field-info", help="show the tower, moduli, and generator")
    _add_pkn(p_info)

    p_check = sub.add_parser("check", help="membership search for one (p, k, n)")
    _add_pkn(p_check)
    p_check.add_argument("--criterion-only", action="store_true", help="skip the element sweep")
    p_check.add_argument("--enum-cap", type=int, default=DEFAULT_CAPS.enumeration_cap)
    p_check.add_argument("--char-cap", type=int, default=DEFAULT_CAPS.character_cap)

    p_scan = sub.add_parser("scan", help="grid scan over (p, k, n)")
    p_scan.add_argument("--p-range", type=_parse_range, required=True, metavar="A..B")
    p_scan.add_argument("--k-range", type=_parse_range, default=(1, 1), metavar="A..B")
    p_scan.add_argument("--n-range", type=_parse_range, required=True, metavar="A..B")
    p_scan.add_argument("--format", choices=("csv", "json"), default="csv")
    p_scan.add_argument("--out", default=None, help="output file (default stdout)")
    p_scan.add_argument("--workers", type=int, default=1)
    p_scan.add_argument("--char-check", action="store_true", help="cross-check counts via characters")
    p_scan.add_argument("--enum-cap", type=int, default=DEFAULT_CAPS.enumeration_cap)
    p_scan.add_argument("--char-cap", type=int, default=DEFAULT_CAPS.character_cap)

    p_sums = sub.add_parser("sums", help="the sixteen grouped sums with bounds")
    _add_pkn(p_sums)
    p_sums.add_argument("--char-cap", type=int, default=DEFAULT_CAPS.character_cap)

    p_verify = sub.add_parser("verify", help="run the invariant suite")
    p_verify.add_argument("--full", action="store_true", help="sweep to the documented caps")

    return ap


def _cmd_field_info(args):
    ctx = ff.make_field_ctx(args.p, args.k, args.n)
    fp = cyclo.factor_xn_minus_1(ctx)
    info = {
        "schema": 1,
        "p": args.p,
        "k": args.k,
        "n": args.n,
        "q": ctx.q,
        "qn": ctx.order,
        "base_modulus": ff.pstr(ff.Fq(args.p, 1), ctx.fq.modulus, "y"),
        "extension_modulus": ctx.poly_str(ctx.modulus),
        "generator": ctx.gen,
        "generator_poly": ctx.element_str(ctx.gen),
        "group_order": ctx.group_order,
        "group_order_factors": str(ctx.group_factors),
        "omega": ctx.group_factors.omega,
        "Omega": fp.omega,
        "xn_minus_1_factors": [
            {"factor": ctx.poly_str(f), "multiplicity": m} for f, m in fp.factors
        ],
    }
    print(json.dumps(info, indent=2))
    return 0


def _cmd_check(args):
    caps = _caps_from_args(args)
    if args.criterion_only:
        rep = criterion.best_condition(args.p ** args.k, args.n)
        print(json.dumps(rep.to_json_dict(), indent=2))
        return 0
    rep = harness.brute_force_membership(args.p, args.k, args.n, caps=caps, char_check=True)
    print(json.dumps(rep.to_json_dict(), indent=2))
    if rep.char_count is not None and abs(rep.char_count - rep.witness_count) > 1e-4:
        print("character/enumeration count mismatch", file=sys.stderr)
        return 1
    return 0


def _cmd_scan(args):
    caps = _caps_from_args(args)
    reports = harness.scan(
        args.p_range,
        args.k_range,
        args.n_range,
        caps=caps,
        char_check=args.char_check,
        workers=args.workers,
    )
    writer = harness.scan_to_csv if args.format == "csv" else harness.scan_to_json_lines
    if args.out:
        with open(args.out, "w", encoding="ascii", newline="") as fh:
            writer(reports, fh)
    else:
        writer(reports, sys.stdout)
    return 0


def _cmd_sums(args):
    caps = SizeCaps(character_cap=args.char_cap)
    ctx = ff.make_field_ctx(args.p, args.k, args.n, caps=caps)
    try:
        rep = characters.sum_decomposition(ctx)
    except BoundViolated as exc:
        print(f"bound violation: {exc}", file=sys.stderr)
        return 1
    print(json.dumps(rep.to_json_dict(), indent=2))
    return 0


def _cmd_verify(args):
    outcomes = harness.verify_suite("full" if args.full else "quick")
    failed = [o for o in outcomes if not o.ok]
    if failed:
        print(f"{len(failed)} of {len(outcomes)} checks failed")
        return 1
    print(f"all {len(outcomes)} checks passed")
    return 0


_COMMANDS = {
    "field-info": _cmd_field_info,
    "check": _cmd_check,
    "scan": _cmd_scan,
    "sums": _cmd_sums,
    "verify": _cmd_verify,
}


def main(argv=None):
    cache = os.environ.get("PNF_CACHE")
    if cache:
        arith.use_cache(cache)
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except BoundViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
