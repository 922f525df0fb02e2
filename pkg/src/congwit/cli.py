"""Command-line front end.

Commands: witness {method-a|method-b|method-c|s16}, search-primes,
verify-iso, obstruct, selftest.  All reports are canonical JSON on stdout
(or --output); identical configuration and seed give byte-identical bytes.
Exit codes: 0 every recomputed certificate holds and the verdict is
witnessed, 1 a check refuted something, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError
from .presets import method_a_pair, method_b_pair, method_c_pair, s16_pair
from .rings import find_split_primes
from .selftest import FAULTS, run_selftest
from .serialize import (
    SCHEMA_VERSION,
    bundle_from_json,
    bundle_to_json,
    dumps_canonical,
    report_to_json,
)
from .twists import verify_iso

DEFAULT_SAMPLES = 10000
DEFAULT_SEED = 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="congwit",
        description="construct and verify finite-level congruence quotient pairs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    witness = sub.add_parser("witness", help="build a preset pair and verify its twist")
    methods = witness.add_subparsers(dest="method", required=True)

    def common(sp):
        sp.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
        sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
        sp.add_argument("--output", default=None, help="write JSON here instead of stdout")

    ma = methods.add_parser("method-a", help="central scalar asymmetry in SL_n")
    ma.add_argument("--n", type=int, default=4)
    ma.add_argument("--p", type=int, default=5)
    ma.add_argument("--q", type=int, default=7)
    ma.add_argument("--order", type=int, default=2, help="order of the transported central element")
    ma.add_argument("--level", type=int, default=2, help="level exponent at both places")
    common(ma)

    mb = methods.add_parser("method-b", help="diagram-symmetric parabolic pair in SL_4")
    mb.add_argument("--p", type=int, default=5)
    mb.add_argument("--q", type=int, default=7)
    common(mb)

    mc = methods.add_parser("method-c", help="split-place swap over Z[sqrt(d)]")
    mc.add_argument("--d", type=int, default=2)
    mc.add_argument("--p", type=int, default=7)
    mc.add_argument("--q", type=int, default=17)
    common(mc)

    s16 = methods.add_parser("s16", help="2x2 central pair at the primes 3 and 5")
    s16.add_argument("--p", type=int, default=7)
    common(s16)

    sp = sub.add_parser("search-primes", help="ascending split primes, optionally congruence-filtered")
    sp.add_argument("--d", type=int, default=None, help="quadratic ring parameter (1 = rational)")
    sp.add_argument("--count", type=int, default=1)
    sp.add_argument("--exclude", type=int, action="append", default=[])
    sp.add_argument(
        "--full-center",
        type=int,
        default=None,
        metavar="N",
        help="require p = 1 mod N so the full group of N-th roots of unity is residual",
    )
    sp.add_argument("--output", default=None)

    vi = sub.add_parser("verify-iso", help="re-verify the twist of a saved bundle")
    vi.add_argument("bundle", help="path to a witness JSON document")
    vi.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    vi.add_argument("--seed", type=int, default=DEFAULT_SEED)
    vi.add_argument("--output", default=None)

    ob = sub.add_parser("obstruct", help="recompute the certificates of a saved bundle")
    ob.add_argument("bundle")
    ob.add_argument("--output", default=None)

    st = sub.add_parser("selftest", help="run the oracle suite and all preset witnesses")
    st.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    st.add_argument("--seed", type=int, default=DEFAULT_SEED)
    st.add_argument("--inject-fault", choices=FAULTS, default=None)
    return parser


def _emit(doc: dict, output: str | None):
    text = dumps_canonical(doc)
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_witness(args) -> int:
    if args.method == "method-a":
        config = {
            "command": "witness",
            "method": "method-a",
            "n": args.n,
            "p": args.p,
            "q": args.q,
            "order": args.order,
            "level": args.level,
        }
        bundle = method_a_pair(args.n, args.p, args.q, args.order, args.level)
    elif args.method == "method-b":
        config = {"command": "witness", "method": "method-b", "p": args.p, "q": args.q}
        bundle = method_b_pair(args.p, args.q)
    elif args.method == "method-c":
        config = {"command": "witness", "method": "method-c", "d": args.d, "p": args.p, "q": args.q}
        bundle = method_c_pair(args.d, args.p, args.q)
    else:
        config = {"command": "witness", "method": "s16", "p": args.p}
        bundle = s16_pair(args.p)
    config["samples"] = args.samples
    config["seed"] = args.seed
    report = verify_iso(bundle.iso, args.samples, args.seed)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "witness_run",
        "config": config,
        "bundle": bundle_to_json(bundle),
        "iso_report": report_to_json(report),
        "obstruction_holds": bundle.obstruction.holds,
    }
    _emit(doc, args.output)
    return 0 if report.witnessed and bundle.obstruction.holds else 1


def _cmd_search_primes(args) -> int:
    if args.d is None and args.full_center is None:
        raise InputError("give --d and/or --full-center")
    d = args.d if args.d is not None else 1
    congruence = (args.full_center, 1) if args.full_center is not None else None
    primes = find_split_primes(d, args.count, set(args.exclude), congruence)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "prime_search",
        "config": {
            "command": "search-primes",
            "d": d,
            "count": args.count,
            "exclude": sorted(args.exclude),
            "full_center": args.full_center,
        },
        "primes": primes,
    }
    _emit(doc, args.output)
    return 0


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _cmd_verify_iso(args) -> int:
    bundle = bundle_from_json(_load_json(args.bundle))
    report = verify_iso(bundle.iso, args.samples, args.seed)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "iso_verification",
        "config": {
            "command": "verify-iso",
            "bundle": args.bundle,
            "samples": args.samples,
            "seed": args.seed,
        },
        "method": bundle.method,
        "iso_report": report_to_json(report),
    }
    _emit(doc, args.output)
    return 0 if report.witnessed else 1


def _cmd_obstruct(args) -> int:
    from .serialize import obstruction_to_json

    bundle = bundle_from_json(_load_json(args.bundle))
    doc = {
        "schema_version": SCHEMA_VERSION,
        "kind": "obstruction_recompute",
        "config": {"command": "obstruct", "bundle": args.bundle},
        "method": bundle.method,
        "obstruction": obstruction_to_json(bundle.obstruction),
    }
    _emit(doc, args.output)
    return 0 if bundle.obstruction.holds else 1


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "witness":
            return _cmd_witness(args)
        if args.command == "search-primes":
            return _cmd_search_primes(args)
        if args.command == "verify-iso":
            return _cmd_verify_iso(args)
        if args.command == "obstruct":
            return _cmd_obstruct(args)
        if args.command == "selftest":
            return run_selftest(args.samples, args.seed, args.inject_fault)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable")


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
