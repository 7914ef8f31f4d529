"""Command-line front end.

Every subcommand writes deterministic bytes for identical invocations; the
optional ``--report`` flag wraps the payload in a run report that carries
the wall time and is therefore the one deliberately nondeterministic mode.

Exit codes: 0 success, 1 verification failure (or disagreement between
Moebius routes), 2 usage error, 3 size-guard violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__, bipcore, intervals, jt, lattice, morse, verify
from .bipcore import OrderedBipartition, OrderedPartition
from .errors import BipError, SizeLimitExceeded

EXHAUSTIVE_GUARD = 6
VALUE_GUARD = 16


def _guard(n: int, limit: int, flag: int | None) -> None:
    cap = flag if flag is not None else limit
    if n > cap:
        raise SizeLimitExceeded(
            f"n={n} exceeds the guard {cap}; raise it with --max-n if intended"
        )
    if n < 1:
        raise BipError("n must be at least 1")


def _parse_endpoint(s: str, n: int | None) -> OrderedBipartition:
    ob = bipcore.parse_bipartition(s)
    if n is not None and ob.n != n:
        raise BipError(f"endpoint {s!r} lives on {ob.n} elements, expected {n}")
    return ob


def _chain_text(chain: morse.MaximalChain) -> str:
    return " < ".join(e.text() for e in chain.elements)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    _guard(args.n, EXHAUSTIVE_GUARD, args.max_n)
    if args.count:
        print(sum(1 for _ in bipcore.enumerate_all(args.n)))
        return 0
    for ob in bipcore.enumerate_all(args.n):
        if args.format == "json":
            print(json.dumps(bipcore.to_json_dict(ob), separators=(",", ":")))
        else:
            print(ob.text())
    return 0


def cmd_verify(args) -> int:
    _guard(args.n, EXHAUSTIVE_GUARD, args.max_n)
    checks = verify.run_suite(args.suite, args.n)
    for check in checks:
        status = "PASS" if check.passed else "FAIL"
        detail = f": {check.detail}" if check.detail else ""
        print(f"{status} {check.name}{detail}")
    failed = sum(1 for c in checks if not c.passed)
    print(f"suite {args.suite} at n={args.n}: "
          f"{len(checks) - failed}/{len(checks)} checks passed")
    return 1 if failed else 0


def cmd_hasse(args) -> int:
    _guard(args.n, EXHAUSTIVE_GUARD, args.max_n)
    diagram = lattice.hasse_diagram(args.n, max_n=args.max_n or EXHAUSTIVE_GUARD)
    if args.format == "json":
        print(json.dumps(diagram.to_json_dict(), separators=(",", ":")))
    else:
        sys.stdout.write(diagram.to_dot())
    return 0


def cmd_jt(args) -> int:
    if args.base:
        base = bipcore.parse_partition_text(args.base)
    else:
        if args.n is None:
            raise BipError("jt needs --n or --base")
        _guard(args.n, EXHAUSTIVE_GUARD, args.max_n)
        base = OrderedPartition((tuple(range(1, args.n + 1)),))
    _guard(base.n, EXHAUSTIVE_GUARD, args.max_n)
    for perm in jt.jt_refining(base).items:
        print("|".join(str(x) for x in perm))
    return 0


def cmd_chains(args) -> int:
    _guard(args.n, EXHAUSTIVE_GUARD, args.max_n)
    if args.sigma:
        sigma = tuple(int(t) for t in args.sigma.split(","))
        if sorted(sigma) != list(range(1, args.n + 1)):
            raise BipError(f"--sigma {args.sigma!r} is not a permutation of 1..{args.n}")
        stream = morse.enumerate_chains_sigma(sigma)
    else:
        stream = morse.enumerate_chains_full(args.n, max_n=args.max_n or EXHAUSTIVE_GUARD)
    for chain in stream:
        print(_chain_text(chain))
    return 0


def cmd_critical_cells(args) -> int:
    _guard(args.n, EXHAUSTIVE_GUARD, args.max_n)
    cells = morse.critical_cells_full(args.n, max_n=args.max_n or EXHAUSTIVE_GUARD)
    if args.json:
        payload = {
            "n": args.n,
            "count": len(cells),
            "homotopy": morse.homotopy_description(cells),
            "cells": [
                {
                    "chain_index": c.chain_index,
                    "dimension": c.dimension,
                    "sigma": list(c.chain.sigma),
                    "chain": [e.text() for e in c.chain.elements],
                    "skipped_intervals": [list(iv) for iv in c.skipped.intervals],
                    "reduced_intervals": [list(iv) for iv in c.reduced.intervals],
                }
                for c in cells
            ],
        }
        print(json.dumps(payload, separators=(",", ":")))
        return 0
    print(f"critical cells: {len(cells)}")
    for c in cells:
        print(f"cell dimension={c.dimension} chain-index={c.chain_index} "
              f"sigma={','.join(map(str, c.chain.sigma))}")
        print(f"  chain: {_chain_text(c.chain)}")
        print(f"  skipped intervals: {list(c.skipped.intervals)}")
        print(f"  reduced intervals: {list(c.reduced.intervals)}")
    print(f"homotopy type: {morse.homotopy_description(cells)}")
    return 0


def cmd_mobius(args) -> int:
    lower = _parse_endpoint(args.lower, args.n)
    upper = _parse_endpoint(args.upper, args.n)
    _guard(lower.n, VALUE_GUARD, args.max_n)
    payload: dict = {"lower": lower.text(), "upper": upper.text()}
    if args.method in ("closed", "both"):
        payload["closed"] = intervals.mobius_closed_form(lower, upper)
    if args.method in ("bruteforce", "both"):
        payload["bruteforce"] = intervals.mobius_bruteforce(
            lower, upper, max_n=args.max_n or 5)
    if args.method == "both":
        payload["agree"] = payload["closed"] == payload["bruteforce"]
    print(json.dumps(payload, separators=(",", ":")))
    return 0 if payload.get("agree", True) else 1


def cmd_classify(args) -> int:
    lower = _parse_endpoint(args.lower, args.n)
    upper = _parse_endpoint(args.upper, args.n)
    _guard(lower.n, VALUE_GUARD, args.max_n)
    cls = intervals.classify(lower, upper)
    print(json.dumps(
        {"lower": lower.text(), "upper": upper.text(),
         "class": cls.tag, "witness": cls.witness},
        separators=(",", ":")))
    return 0


def cmd_factorize(args) -> int:
    lower = _parse_endpoint(args.lower, args.n)
    upper = _parse_endpoint(args.upper, args.n)
    _guard(lower.n, VALUE_GUARD, args.max_n)
    fac = intervals.factorize_regular(lower, upper)
    print(json.dumps(
        {
            "lower": lower.text(),
            "upper": upper.text(),
            "factors": [
                {"kind": f.kind, "rank": f.rank, "support": list(f.support),
                 "size": f.size()}
                for f in fac.factors
            ],
            "size": fac.size(),
            "rank": fac.rank(),
        },
        separators=(",", ":")))
    return 0


def cmd_decompose(args) -> int:
    lower = _parse_endpoint(args.lower, args.n)
    upper = _parse_endpoint(args.upper, args.n)
    _guard(lower.n, EXHAUSTIVE_GUARD, args.max_n)
    entries = jt.jt_decomposition(lower, upper)
    if args.format == "text":
        for entry in entries:
            perms = " ".join("|".join(map(str, p)) for p in entry.all_sigmas)
            print(f"sigma={'|'.join(map(str, entry.sigma))} "
                  f"size={len(entry.elements)} permutations=[{perms}]")
        return 0
    print(json.dumps(
        [
            {
                "sigma": list(entry.sigma),
                "all_sigmas": [list(p) for p in entry.all_sigmas],
                "elements": [w.text() for w in entry.elements],
            }
            for entry in entries
        ],
        separators=(",", ":")))
    return 0


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biplattice",
        description="Bipartitional relations: enumeration, lattice structure, "
                    "code vectors, minimal-change chain listings, critical "
                    "cells, and Moebius values.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("--max-n", type=int, default=None,
                       help="override the size guard")
        p.add_argument("--report", action="store_true",
                       help="wrap the output in a JSON run report (adds wall time)")
        return p

    p = add("enumerate", cmd_enumerate, help="list or count all bipartitional relations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = add("verify", cmd_verify, help="run a named invariant suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--suite", required=True, choices=sorted(verify.SUITES))

    p = add("hasse", cmd_hasse, help="emit the Hasse diagram as DOT or JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--format", choices=("dot", "json"), default="dot")

    p = add("jt", cmd_jt, help="stream a minimal-change permutation listing")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--base", default=None,
                   help="ordered partition in text form, e.g. '1,3|2,4'")

    p = add("chains", cmd_chains, help="stream maximal chains")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sigma", default=None,
                   help="restrict to one permutation group, e.g. '2,1,3'")

    p = add("critical-cells", cmd_critical_cells,
            help="scan the full chain enumeration for critical cells")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--json", action="store_true")

    for name, fn, extra in (
        ("mobius", cmd_mobius, True),
        ("classify", cmd_classify, False),
        ("factorize", cmd_factorize, False),
    ):
        p = add(name, fn, help=f"{name} an interval given by --lower/--upper")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--lower", required=True)
        p.add_argument("--upper", required=True)
        if extra:
            p.add_argument("--method", choices=("closed", "bruteforce", "both"),
                           default="both")

    p = add("decompose", cmd_decompose,
            help="sublattice decomposition of an interval")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--lower", required=True)
    p.add_argument("--upper", required=True)
    p.add_argument("--format", choices=("text", "json"), default="json")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.report:
        import io
        from contextlib import redirect_stdout

        start = time.perf_counter()
        buf = io.StringIO()
        try:
            with redirect_stdout(buf):
                status = args.fn(args)
        except SizeLimitExceeded as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
        except BipError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        report = {
            "command": args.command,
            "parameters": {
                k: v for k, v in sorted(vars(args).items())
                if k not in ("fn", "report") and v is not None
            },
            "output": buf.getvalue(),
            "exit_status": status,
            "wall_time_ms": round(1000 * (time.perf_counter() - start), 3),
            "version": __version__,
        }
        print(json.dumps(report, separators=(",", ":")))
        return status
    try:
        return args.fn(args)
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
