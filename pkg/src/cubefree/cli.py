"""Command-line front end.

Subcommands: ``check`` (freeness of a given set), ``max`` (exact maximum for a
pattern family), ``verify`` (sweep a catalogued claim over parameter ranges),
``construct`` (emit a named set or decomposition), ``cache`` (inspect the JSONL
result cache).  Exit codes: 0 success or pass, 1 violation or failed claim,
2 usage error, 3 size cap exceeded.

Machine output goes to stdout as JSON (or CSV with ``--csv``); progress and
summary lines stream to stderr so long sweeps stay watchable.  Payloads are
deterministic apart from the elapsed-time fields.
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional

from . import __version__
from .ambient import Ambient, DenseSet
from .cache import ResultCache, fingerprint
from .claims import CLAIMS, claim_points, run_claim_point
from .constructions import (
    alternating_chain_set,
    block_partition,
    chain_decomposition,
    interval_construction,
    layers_integers,
    layers_prime_power,
    matrix_coord,
    residue_construction,
)
from .cubes import diagonal_witness, find_cube
from .search import (
    BRANCH_BOUND_CAP,
    BRUTE_FORCE_CAP,
    CUBE,
    DIAGONAL,
    PAIR,
    CapExceededError,
    Problem,
    branch_and_bound_max,
    brute_force_max,
    chain_dp_max_pairfree_interval,
    graph_dp_max_pairfree_cyclic,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class UsageError(Exception):
    pass


def _parse_range(text: str) -> list[int]:
    """Accept '9', '3..15', or '2,5,7'."""
    text = text.strip()
    m = re.fullmatch(r"(\d+)\.\.(\d+)", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        return list(range(lo, hi + 1))
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None


def _parse_tuples(text: str, arity: int) -> list[tuple[int, ...]]:
    """Accept '(25,5),(49,7)' style lists."""
    found = re.findall(r"\(([^()]*)\)", text)
    if not found:
        raise UsageError(f"cannot parse tuple list {text!r}")
    out = []
    for body in found:
        parts = [p.strip() for p in body.split(",")]
        if len(parts) != arity or not all(p.isdigit() for p in parts):
            raise UsageError(f"expected {arity}-tuples of integers in {text!r}")
        out.append(tuple(int(p) for p in parts))
    return out


def _parse_set(text: str) -> list[int]:
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    text = text.replace(",", " ").strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split()]
    except ValueError:
        raise UsageError(f"malformed set spec {text!r}") from None


def _ambient_from_args(args) -> Ambient:
    if args.cyclic is not None and args.interval is not None:
        raise UsageError("choose one of --cyclic N or --interval N")
    if args.cyclic is not None:
        return Ambient.cyclic(args.cyclic)
    if args.interval is not None:
        return Ambient.interval(args.interval)
    raise UsageError("an ambient is required: --cyclic N or --interval N")


def _emit(args, payload: dict, csv_rows: Optional[tuple[list[str], list[list]]] = None):
    if getattr(args, "csv", False):
        if csv_rows is None:
            raise UsageError("this command has no CSV form")
        header, rows = csv_rows
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit JSON (the default)")
    p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
    p.add_argument("--out", metavar="FILE", help="write the payload to FILE")


def _add_ambient_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cyclic", type=int, metavar="N", help="work in Z_N")
    p.add_argument("--interval", type=int, metavar="N", help="work in [N] = {1..N}")


def _add_cache_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--no-cache", action="store_true", help="recompute, touch no cache")
    p.add_argument("--cache", metavar="FILE", help="cache file (default CUBEFREE_CACHE or ./cubefree-cache.jsonl)")


def _pattern_from_args(args, allow_plain_d: bool) -> tuple[str, int]:
    chosen = [(CUBE, args.cube), (DIAGONAL, args.diag), (PAIR, args.pair)]
    if allow_plain_d:
        chosen.append((CUBE, args.d))
    picked = [(kind, val) for kind, val in chosen if val is not None]
    if len(picked) != 1:
        raise UsageError("choose exactly one pattern: --cube D / --diag D / --pair D")
    return picked[0]


# ---------------------------------------------------------------- check


def cmd_check(args) -> int:
    ambient = _ambient_from_args(args)
    kind, d = _pattern_from_args(args, allow_plain_d=True)
    try:
        a = DenseSet.from_iterable(ambient, _parse_set(args.set))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    witness = None
    if kind == CUBE:
        hit = find_cube(a, d)
        if hit is not None:
            witness = {
                "kind": "generator",
                "entries": list(hit.generator.entries),
                "cube": hit.cube.elements(),
            }
    elif kind == DIAGONAL:
        x = diagonal_witness(a, d)
        if x is not None:
            witness = {
                "kind": "diagonal",
                "x": x,
                "elements": sorted({t * x % ambient.order if ambient.is_cyclic else t * x
                                    for t in range(1, d)}),
            }
    else:
        for x in ambient.elements():
            y = d * x % ambient.order if ambient.is_cyclic else d * x
            if x in a and y in a:
                witness = {"kind": "pair", "x": x, "elements": sorted({x, y})}
                break
    payload = {
        "command": "check",
        "ambient": ambient.kind,
        "N": ambient.order,
        "pattern": kind,
        "d": d,
        "set": a.elements(),
        "free": witness is None,
        "witness": witness,
    }
    _emit(args, payload)
    return EXIT_OK if witness is None else EXIT_VIOLATION


# ---------------------------------------------------------------- max


def _solve_max(problem: Problem, cap: Optional[int], force: bool):
    n = problem.ambient.order
    if problem.kind == PAIR:
        if problem.ambient.is_cyclic:
            return graph_dp_max_pairfree_cyclic(n, problem.d)
        return chain_dp_max_pairfree_interval(n, problem.d)
    brute_cap = min(cap if cap is not None else BRUTE_FORCE_CAP, 26)
    bb_cap = cap if cap is not None else BRANCH_BOUND_CAP
    if n <= brute_cap:
        return brute_force_max(problem, cap=brute_cap)
    if n <= bb_cap or force:
        return branch_and_bound_max(problem, cap=n)
    raise CapExceededError(
        f"N={n} exceeds the cap {bb_cap}; pass --force or raise --cap"
    )


def cmd_max(args) -> int:
    ambient = _ambient_from_args(args)
    kind, d = _pattern_from_args(args, allow_plain_d=False)
    problem = Problem(kind, d, ambient)
    command = {
        "cmd": "max",
        "ambient": ambient.kind,
        "N": ambient.order,
        "kind": kind,
        "d": d,
        "cap": args.cap,
        "force": bool(args.force),
    }
    cache = None if args.no_cache else ResultCache(args.cache)
    if cache is not None:
        hit = cache.lookup(fingerprint(command))
        if hit is not None:
            payload = dict(hit.payload, cached=True)
            _emit(args, payload, _search_csv(payload))
            return EXIT_OK
    result = _solve_max(problem, args.cap, args.force)
    payload = result.as_json_dict()
    if cache is not None:
        cache.store(command, payload, __version__)
    payload = dict(payload, cached=False)
    _emit(args, payload, _search_csv(payload))
    return EXIT_OK


def _search_csv(payload: dict):
    header = ["problem", "ambient", "N", "d", "max", "witness", "method",
              "explored", "elapsed_ms", "optimal"]
    row = [payload["problem"], payload["ambient"], payload["N"], payload["d"],
           payload["max"], " ".join(map(str, payload["witness"])),
           payload["method"], payload["explored"], payload["elapsed_ms"],
           payload["optimal"]]
    return header, [row]


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    claim = CLAIMS.get(args.claim)
    if claim is None:
        raise UsageError(
            f"unknown claim id {args.claim!r}; known: {', '.join(sorted(CLAIMS))}"
        )
    overrides = {}
    for flag in ("N", "d", "p"):
        value = getattr(args, flag)
        if value is not None:
            overrides[flag] = _parse_range(value)
    if args.pairs:
        overrides["pairs"] = _parse_tuples(args.pairs, 2)
    if args.triples:
        overrides["triples"] = _parse_tuples(args.triples, 3)
    points = claim_points(claim, overrides)
    if not points:
        raise UsageError("no applicable parameter points in the requested ranges")

    command = {"cmd": "verify", "claim": claim.claim_id, "points": points}
    cache = None if args.no_cache else ResultCache(args.cache)
    cached = False
    if cache is not None:
        hit = cache.lookup(fingerprint(command))
        if hit is not None:
            payload, cached = dict(hit.payload, cached=True), True
    if not cached:
        runner = functools.partial(run_claim_point, claim.claim_id)
        if args.workers and args.workers > 1:
            with ProcessPoolExecutor(max_workers=args.workers) as pool:
                verdict_iter = pool.map(runner, points)
                verdicts = _stream_verdicts(verdict_iter)
        else:
            verdicts = _stream_verdicts(map(runner, points))
        payload = {
            "command": "verify",
            "claim": claim.claim_id,
            "description": claim.description,
            "verdicts": [v.as_json_dict() for v in verdicts],
            "summary": {
                "points": len(verdicts),
                "passed": sum(v.passed for v in verdicts),
                "failed": sum(not v.passed for v in verdicts),
            },
        }
        if cache is not None:
            cache.store(command, payload, __version__)
        payload = dict(payload, cached=False)
    summary = payload["summary"]
    print(
        f"SUMMARY claim={claim.claim_id} points={summary['points']} "
        f"pass={summary['passed']} fail={summary['failed']}",
        file=sys.stderr,
    )
    _emit(args, payload, _verdict_csv(payload))
    return EXIT_OK if summary["failed"] == 0 else EXIT_VIOLATION


def _stream_verdicts(verdict_iter) -> list:
    verdicts = []
    for v in verdict_iter:
        verdicts.append(v)
        state = "PASS" if v.passed else "FAIL"
        params = " ".join(f"{k}={val}" for k, val in v.params.items())
        print(f"{v.claim} {params} observed={v.observed} [{v.bound}] {state}",
              file=sys.stderr)
    return verdicts


def _verdict_csv(payload: dict):
    header = ["claim", "params", "observed", "bound", "passed", "method"]
    rows = [
        [v["claim"], json.dumps(v["params"], sort_keys=True), v["observed"],
         v["bound"], v["passed"], v["method"]]
        for v in payload["verdicts"]
    ]
    return header, rows


# ---------------------------------------------------------------- construct


def _need(args, *names) -> list[int]:
    vals = []
    for name in names:
        v = getattr(args, name)
        if v is None:
            raise UsageError(f"construct {args.name} requires --{name}")
        vals.append(v)
    return vals


def cmd_construct(args) -> int:
    name = args.name
    if name == "residue":
        n, d = _need(args, "N", "d")
        elems = residue_construction(n, d).elements()
        payload = {"command": "construct", "name": name, "N": n, "d": d,
                   "elements": elems}
        rows = (["element"], [[e] for e in elems])
    elif name == "interval":
        (n,) = _need(args, "N")
        elems = interval_construction(n, cyclic=args.as_cyclic).elements()
        payload = {"command": "construct", "name": name, "N": n,
                   "ambient": "cyclic" if args.as_cyclic else "interval",
                   "elements": elems}
        rows = (["element"], [[e] for e in elems])
    elif name == "alternating":
        n, d = _need(args, "N", "d")
        elems = alternating_chain_set(n, d).elements()
        payload = {"command": "construct", "name": name, "N": n, "d": d,
                   "elements": elems}
        rows = (["element"], [[e] for e in elems])
    elif name == "chains":
        n, d = _need(args, "N", "d")
        dec = chain_decomposition(n, d)
        payload = {"command": "construct", "name": name, **dec.as_json_dict()}
        rows = (["chain", "position", "element"],
                [[i, j, e] for i, c in enumerate(dec.chains)
                 for j, e in enumerate(c, 1)])
    elif name == "layers":
        if args.p is not None:
            p, l = _need(args, "p", "l")
            dec = layers_prime_power(p, l)
        else:
            n, d = _need(args, "N", "d")
            dec = layers_integers(n, d)
        payload = {"command": "construct", "name": name, **dec.as_json_dict()}
        rows = (["layer", "element"],
                [[i + 1, e] for i, lay in enumerate(dec.layers) for e in lay])
    elif name == "blocks":
        p, l, d = _need(args, "p", "l", "d")
        bp = block_partition(p, l, d)
        payload = {"command": "construct", "name": name, **bp.as_json_dict()}
        rows = (["block", "layer_lo", "layer_hi", "element"],
                [[i, *rng, e] for i, (rng, b) in
                 enumerate(zip(bp.ranges, bp.blocks), 1) for e in b])
    elif name == "matrix":
        d, upto = _need(args, "d", "upto")
        coords = [[m, *matrix_coord(m, d)] for m in range(1, upto + 1)]
        payload = {"command": "construct", "name": name, "d": d, "upto": upto,
                   "coords": coords}
        rows = (["m", "row", "col"], coords)
    else:
        raise UsageError(f"unknown construction {name!r}")
    _emit(args, payload, rows)
    return EXIT_OK


# ---------------------------------------------------------------- cache


def cmd_cache(args) -> int:
    cache = ResultCache(args.cache)
    records = list(cache.records())
    payload = {
        "command": "cache",
        "path": cache.path,
        "records": len(records),
        "entries": [
            {"fingerprint": r.fingerprint, "timestamp": r.timestamp,
             "kind": r.command.get("cmd"), "version": r.version}
            for r in records
        ],
    }
    _emit(args, payload)
    return EXIT_OK


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="cubefree",
        description="cube-free / diagonal-free / dilation-free subset toolkit",
    )
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("check", help="test a given set for pattern freeness")
    _add_ambient_flags(p)
    p.add_argument("--d", type=int, help="cube size (alias of --cube)")
    p.add_argument("--cube", type=int, metavar="D", help="forbid projective D-cubes")
    p.add_argument("--diag", type=int, metavar="D", help="forbid {x,...,(D-1)x}")
    p.add_argument("--pair", type=int, metavar="D", help="forbid {x, Dx}")
    p.add_argument("--set", required=True, metavar="SPEC",
                   help="comma list of elements, or @FILE")
    _add_output_flags(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("max", help="exact maximum size for a pattern family")
    _add_ambient_flags(p)
    p.add_argument("--cube", type=int, metavar="D")
    p.add_argument("--diag", type=int, metavar="D")
    p.add_argument("--pair", type=int, metavar="D")
    p.add_argument("--cap", type=int, help="override the solver size caps")
    p.add_argument("--force", action="store_true", help="run past the caps")
    p.add_argument("--workers", type=int, default=1, help="accepted; solvers are single-threaded")
    _add_cache_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_max)

    p = sub.add_parser("verify", help="sweep a catalogued claim over parameters")
    p.add_argument("claim", help=f"one of: {', '.join(sorted(CLAIMS))}")
    p.add_argument("--N", help="range like 3..15 or 3,6,9")
    p.add_argument("--d", help="range for d")
    p.add_argument("--p", help="range for p")
    p.add_argument("--pairs", help="points like (25,5),(49,7)")
    p.add_argument("--triples", help="points like (2,3,2),(3,3,2)")
    p.add_argument("--workers", type=int, default=1)
    _add_cache_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit a named set or decomposition")
    p.add_argument("name",
                   choices=["residue", "interval", "alternating", "chains",
                            "layers", "blocks", "matrix"])
    p.add_argument("--N", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--upto", type=int)
    p.add_argument("--cyclic", dest="as_cyclic", action="store_true",
                   help="interval construction: reduce into Z_N")
    _add_output_flags(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("cache", help="summarize the result cache")
    p.add_argument("--cache", metavar="FILE")
    _add_output_flags(p)
    p.set_defaults(func=cmd_cache)

    return top


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
