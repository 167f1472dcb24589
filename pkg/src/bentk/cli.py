"""Command-line interface.

Machine output is JSON lines on stdout; diagnostics go to stderr. Exit codes:
0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from . import bounds, gf2
from .anf import parse_anf
from .boolfun import BooleanFunction, anf_from_table, classify, degree, table_from_anf, weight
from .errors import BentkError
from .hypermatch import (
    build_partition_hypergraph,
    build_spread_hypergraph,
    count_perfect_matchings,
    spreads,
)
from .kconstruct import construct_from_blocks, construct_k, iter_k, random_instance
from .transversals import CayleyTable, Transversal, count_transversals, iter_transversals, recursive_spread

EXAMPLE_PARTS = ("0000 0100 1010 1110", "0010 0110 0011 0111", "1000 1100 1001 1101", "0001 0101 1011 1111")
EXAMPLE_BLOCKS = ("y2(y1+y3)", "y2y4+y3", "y2y4+y1", "y2(y1+y3)+y4")
EXAMPLE_RESULT = "(y1+y3+y4)(x1x2 + y2x1 + y2x2) + y3x2 + y1x1 + y2(y1+y3)"


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _k_names(n1: int, n2: int) -> list[str]:
    return [f"x{i}" for i in range(1, n1 + 1)] + [f"y{i}" for i in range(1, n2 + 1)]


def read_table(text: str, n: int) -> BooleanFunction:
    """Binary string when it has 2^n characters, nibble-packed hex otherwise."""
    text = text.strip()
    if len(text) == 1 << n and set(text) <= {"0", "1"}:
        return BooleanFunction.from_bits(text)
    return BooleanFunction.from_hex(text, n)


def describe(f: BooleanFunction, names: Sequence[str] | None = None) -> dict:
    cls = classify(f)
    out = {
        "n": f.n,
        "hex": f.to_hex(),
        "kind": cls.kind,
        "amplitude": cls.amplitude,
        "support_size": len(cls.support),
        "degree": degree(f),
        "weight": weight(f),
        "anf": anf_from_table(f).format(names),
    }
    if len(cls.support) <= 256:
        out["support"] = [gf2.bitstr(u, f.n) for u in cls.support]
    return out


# -- commands ----------------------------------------------------------------

def cmd_analyze(args) -> int:
    if args.anf is not None:
        if not args.vars:
            raise SystemExit("analyze: --anf needs --vars")
        names = [v.strip() for v in args.vars.split(",") if v.strip()]
        f = table_from_anf(parse_anf(args.anf, names))
    else:
        if args.n is None:
            raise SystemExit("analyze: --tt needs --n")
        names = None
        f = read_table(args.tt, args.n)
    _emit(describe(f, names))
    return 0


def _synth_one(job: tuple[int, int, int, int]) -> dict:
    n1, n2, seed, index = job
    rng = np.random.default_rng([seed, index])
    inst = random_instance(n1, n2, rng)
    f = construct_k(inst)
    return {
        "index": index,
        "n": f.n,
        "hex": f.to_hex(),
        "anf": anf_from_table(f).format(_k_names(n1, n2)),
        "instance": json.loads(inst.to_json()),
    }


def cmd_synthesize_k(args) -> int:
    jobs = [(args.n1, args.n2, args.seed, i) for i in range(args.count)]
    if args.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            for rec in pool.map(_synth_one, jobs):
                _emit(rec)
    else:
        for job in jobs:
            _emit(_synth_one(job))
    return 0


def cmd_enumerate_k(args) -> int:
    names = _k_names(args.n1, args.n2)
    total = 0
    for inst, f in iter_k(args.n1, args.n2):
        total += 1
        _emit({"hex": f.to_hex(), "anf": anf_from_table(f).format(names), "partition": [str(p) for p in inst.parts]})
    print(f"{total} functions", file=sys.stderr)
    return 0


def cmd_count(args) -> int:
    if args.object == "partitions":
        c = count_perfect_matchings(build_partition_hypergraph(args.m), cap=args.cap, workers=args.workers)
    elif args.object == "spreads":
        c = count_perfect_matchings(build_spread_hypergraph(args.m), cap=args.cap, workers=args.workers)
    else:
        c = count_transversals(CayleyTable(args.arity, args.m), cap=args.cap)
    _emit({"object": args.object, "m": args.m, "count": int(c), "truncated": c.truncated})
    return 0


def cmd_transversals(args) -> int:
    for i, t in enumerate(iter_transversals(CayleyTable(args.arity, args.m))):
        if args.limit is not None and i >= args.limit:
            break
        sys.stdout.write(t.to_json() + "\n")
    return 0


def cmd_lift(args) -> int:
    from .transversals import lift_transversal

    stream = sys.stdin if args.transversals == "-" else open(args.transversals)
    with stream:
        for line in stream:
            if not line.strip():
                continue
            t = Transversal.from_json(line)
            if t.table.m != args.m - 2:
                raise BentkError(f"transversal of order 2^{t.table.m} does not lift to F_2^{args.m}")
            sys.stdout.write(lift_transversal(t).to_json() + "\n")
    return 0


def cmd_spread(args) -> int:
    if args.recursive:
        rng = None if args.seed is None else np.random.default_rng(args.seed)
        sys.stdout.write(recursive_spread(args.n, rng).to_json() + "\n")
        return 0
    for i, s in enumerate(spreads(args.n)):
        if args.limit is not None and i >= args.limit:
            break
        sys.stdout.write(s.to_json() + "\n")
    return 0


def cmd_bounds(args) -> int:
    if args.n is None and args.m is None:
        raise SystemExit("bounds: give --n and/or --m")
    _emit([r.to_dict() for r in bounds.report(args.n, args.m)])
    return 0


def verify_example() -> dict:
    """Rebuild the 6-variable worked example and compare with its closed form."""
    ys = ["y1", "y2", "y3", "y4"]
    parts = [gf2.subspace_from_points([int(p, 2) for p in s.split()], 4) for s in EXAMPLE_PARTS]
    blocks = [table_from_anf(parse_anf(t, ys)) for t in EXAMPLE_BLOCKS]
    f = construct_from_blocks(2, parts, blocks)
    names = _k_names(2, 4)
    expected = table_from_anf(parse_anf(EXAMPLE_RESULT, names))
    cls = classify(f)
    ok = f == expected and cls.is_bent and cls.amplitude == 8
    return {
        "status": "example reproduced" if ok else "example NOT reproduced",
        "ok": ok,
        "hex": f.to_hex(),
        "anf": anf_from_table(f).format(names),
        "kind": cls.kind,
    }


def cmd_verify_example(args) -> int:
    rec = verify_example()
    _emit(rec)
    print(rec["status"], file=sys.stderr)
    return 0 if rec["ok"] else 1


# -- parser ------------------------------------------------------------------

def _u64(text: str) -> int:
    v = int(text, 0)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS,
                        help="worker processes, default all cores (1 = deterministic order)")
    ap = argparse.ArgumentParser(prog="bentk", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("analyze", help="classify a Boolean function")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--anf")
    src.add_argument("--tt", help="truth table: 2^n bits, or nibble-packed hex")
    p.add_argument("--vars", help="comma-separated variable names for --anf")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("synthesize-k", help="random bent functions from the construction")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_synthesize_k)

    p = sub.add_parser("enumerate-k", help="every function of the construction (small sizes)")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--n2", type=int, required=True)
    p.set_defaults(func=cmd_enumerate_k)

    p = sub.add_parser("count", help="exact counts of partitions, spreads or transversals")
    p.add_argument("--object", choices=("partitions", "spreads", "transversals"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--arity", type=int, choices=(3, 4), default=4,
                   help="transversals: 3 = latin square, 4 = latin cube")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("transversals", help="list transversals as JSON lines")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--arity", type=int, choices=(3, 4), default=4)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_transversals)

    p = sub.add_parser("lift", help="lift cube transversals to partitions of F_2^m")
    p.add_argument("--transversals", required=True, help="JSON lines file, or - for stdin")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("spread", help="2-spreads of F_2^n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--recursive", action="store_true", help="build one spread from transversals")
    p.add_argument("--seed", type=_u64)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_spread)

    p = sub.add_parser("bounds", help="report of closed-form bounds")
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify-example", help="rebuild the worked 6-variable example")
    p.set_defaults(func=cmd_verify_example)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.workers = getattr(args, "workers", None) or os.cpu_count() or 1
    if args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        return args.func(args)
    except SystemExit as e:
        if isinstance(e.code, str):
            parser.error(e.code)
        raise
    except (BentkError, ValueError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
