"""Command-line front end: build words, measure depth and girth, verify
the identity suites, check finite-group laws, and run the almost-law
pipeline on SU(k).

Machine-readable output is stable: --json payloads carry no wall-clock
fields and randomized subcommands demand an explicit --seed under
--json, so identical invocations produce identical bytes.  Expensive
results can be cached in a JSON-lines journal (one entry per line,
appended by atomic temp-and-rename); the default cache directory comes
from the FIBWORDS_CACHE_DIR environment variable.

Exit codes: 0 success, 1 a verification or law check failed, 2 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
import time
from pathlib import Path

from . import __version__
from .words import WordParseError, parse
from .construction import PRIMED, STANDARD, build_pair, exponent_table, verify_level
from .magnus import DEFAULT_CAP, lcs_depth
from .girth import alpha, verify_remarks
from .finite import is_law, load_group, nilpotent_law_word
from .catalog import NILPOTENT_NAMES, build_group
from .unitary import (
    DEFAULT_LENGTH_CAP,
    SeedSearchError,
    decay_constants,
    decay_report,
    find_seed_pair,
)

CACHE_ENV = "FIBWORDS_CACHE_DIR"
_CACHE_FILE = "fibwords-cache.jsonl"


# ---------------------------------------------------------------------------
# Result cache


def cache_lookup(directory, kind: str, key: dict):
    """Payload of the newest matching entry, or None."""
    path = Path(directory) / _CACHE_FILE
    if not path.exists():
        return None
    hit = None
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        entry = json.loads(line)
        if (entry.get("kind") == kind and entry.get("key") == key
                and entry.get("tool_version") == __version__):
            hit = entry["payload"]
    return hit


def cache_append(directory, kind: str, key: dict, payload) -> None:
    """Append one journal entry, rewriting the file atomically."""
    path = Path(directory) / _CACHE_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    entry = {
        "kind": kind,
        "key": key,
        "payload": payload,
        "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
        "tool_version": __version__,
    }
    existing = path.read_text() if path.exists() else ""
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=".cache-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(existing)
            fh.write(json.dumps(entry, sort_keys=True) + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_json(obj) -> None:
    print(json.dumps(obj, sort_keys=True, indent=2))


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_build(args) -> int:
    pair = build_pair(args.n, args.variant)
    if args.json:
        _emit_json({
            "n": pair.level,
            "variant": pair.variant,
            "a": str(pair.a),
            "b": str(pair.b),
            "len_a": len(pair.a),
            "len_b": len(pair.b),
            "depth_bound": pair.depth_bound,
        })
    else:
        print(f"a_{pair.level} = {pair.a}")
        print(f"b_{pair.level} = {pair.b}")
        print(f"lengths {len(pair.a)}/{len(pair.b)}, depth >= {pair.depth_bound}")
    return 0


def _cmd_depth(args) -> int:
    word = parse(args.word)
    key = {"word": str(word), "cap": args.cap}
    payload = cache_lookup(args.cache, "depth", key) if args.cache else None
    if payload is None:
        result = lcs_depth(word, args.cap)
        payload = {"word": str(word), "cap": args.cap,
                   "kind": result.kind, "depth": result.depth}
        if args.cache:
            cache_append(args.cache, "depth", key, payload)
    if args.json:
        _emit_json(payload)
    else:
        kind, depth = payload["kind"], payload["depth"]
        text = ("Identity" if kind == "identity"
                else f"Exact({depth})" if kind == "exact" else f"AtLeast({depth})")
        print(text)
    return 0


def _cmd_alpha(args) -> int:
    key = {"n": args.n, "radius": args.radius}
    payload = cache_lookup(args.cache, "alpha", key) if args.cache else None
    cached = payload is not None
    if payload is None:
        record = alpha(args.n, args.radius, args.threads)
        payload = record.json_dict()
        if args.cache:
            cache_append(args.cache, "alpha", key, payload)
    if args.json:
        _emit_json(payload)
    elif payload["value"] is not None:
        suffix = "cached" if cached else f"{payload['candidates']} candidates"
        print(f"alpha({payload['n']}) = {payload['value']}, "
              f"witness {payload['witness']} [{suffix}]")
    else:
        print(f"alpha({payload['n']}) unknown above radius {payload['radius']}")
    return 0


def _depth_ladder_checks(n_max: int = 3) -> list[dict]:
    from .construction import fibonacci

    checks = []
    for n in range(n_max + 1):
        word = build_pair(n).a
        result = lcs_depth(word)
        want = fibonacci(n + 2)
        checks.append({
            "name": f"depth(a_{n}) = {want}",
            "passed": result.kind == "exact" and result.depth == want,
            "detail": f"{result.kind}({result.depth})",
        })
    return checks


def _cmd_verify(args) -> int:
    suites = []
    for n in range(args.level + 1):
        report = verify_level(n)
        suites.append({
            "name": f"construction_level_{n}",
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                       for c in report.checks],
        })
    suites.append({"name": "depth_ladder", "checks": _depth_ladder_checks()})
    remarks = verify_remarks()
    suites.append({
        "name": "girth_remarks",
        "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                   for c in remarks.checks],
    })
    ok = all(c["passed"] for s in suites for c in s["checks"])
    if args.json:
        _emit_json({"level": args.level, "ok": ok, "suites": suites})
    else:
        for suite in suites:
            for check in suite["checks"]:
                mark = "ok" if check["passed"] else "FAIL"
                detail = f"  ({check['detail']})" if check["detail"] else ""
                print(f"[{mark:4s}] {suite['name']}: {check['name']}{detail}")
        total = sum(len(s["checks"]) for s in suites)
        print(f"{'all' if ok else 'NOT all'} {total} checks passed")
    return 0 if ok else 1


def _cmd_law(args) -> int:
    word = nilpotent_law_word(args.order)
    results = []
    if args.group:
        groups = [load_group(args.group)]
    elif args.catalog:
        groups = [g for g in map(build_group, NILPOTENT_NAMES)
                  if g.order <= args.order]
    else:
        groups = []
    for group in groups:
        cert = is_law(group, word)
        results.append({
            "group": cert.group,
            "order": group.order,
            "holds": cert.holds,
            "pairs_checked": cert.pairs_checked,
            "counterexample": list(cert.counterexample) if cert.counterexample else None,
        })
    ok = all(r["holds"] for r in results)
    payload = {
        "order": args.order,
        "word": str(word),
        "word_length": len(word),
        "groups": results,
        "ok": ok,
    }
    if args.cache:
        key = {"order": args.order,
               "group": args.group or ("catalog" if args.catalog else None)}
        cache_append(args.cache, "law", key, payload)
    if args.json:
        _emit_json(payload)
    else:
        print(f"law word for nilpotent groups of order <= {args.order}: "
              f"{len(word)} letters")
        for r in results:
            state = "holds" if r["holds"] else f"FAILS at {r['counterexample']}"
            print(f"  {r['group']} (order {r['order']}): {state} "
                  f"[{r['pairs_checked']} pairs]")
        if not groups:
            print(f"  word = {word}")
    return 0 if ok else 1


def _almost_payload(args, seed: int) -> dict:
    pair = find_seed_pair(args.k, args.length_cap, args.budget, seed)
    rows = decay_report(args.k, args.n_max, args.budget, seed, pair=pair,
                        length_cap=args.length_cap)
    return {
        "k": args.k,
        "n_max": args.n_max,
        "budget": args.budget,
        "seed": seed,
        "length_cap": args.length_cap,
        "pair": {
            "len_w": len(pair.w),
            "len_v": len(pair.v),
            "certified_estimate": pair.certified_estimate,
            "samples": pair.samples,
        },
        "rows": [{
            "n": r.n,
            "len": r.word_length,
            "L_hat": r.L_hat,
            "neg_log": r.neg_log,
            "samples": r.samples,
            "seed": seed,
            "below_float_range": r.below_float_range,
        } for r in rows],
        "constants": decay_constants(rows),
    }


def _cmd_almost(args) -> int:
    if args.json and args.seed is None:
        print("error: almost --json requires an explicit --seed", file=sys.stderr)
        return 2
    seed = 0 if args.seed is None else args.seed
    key = {"k": args.k, "n_max": args.n_max, "budget": args.budget,
           "seed": seed, "length_cap": args.length_cap}
    payload = cache_lookup(args.cache, "decay", key) if args.cache else None
    if payload is None:
        payload = _almost_payload(args, seed)
        if args.cache:
            cache_append(args.cache, "decay", key, payload)
    if args.json:
        _emit_json(payload)
    else:
        print("n,len,L_hat,neg_log,samples,seed")
        for row in payload["rows"]:
            neg_log = "" if row["neg_log"] is None else repr(row["neg_log"])
            print(f"{row['n']},{row['len']},{row['L_hat']!r},{neg_log},"
                  f"{row['samples']},{row['seed']}")
    return 0


def _cmd_table(args) -> int:
    rows = exponent_table(args.n_max, args.depth_mode)
    if args.format == "json":
        _emit_json([{
            "n": r.n,
            "variant": r.variant,
            "len_a": r.len_a,
            "len_b": r.len_b,
            "depth": r.depth,
            "depth_is_exact": r.depth_is_exact,
            "estimate": r.estimate,
        } for r in rows])
    else:
        print("n,variant,len_a,len_b,depth,depth_is_exact,estimate")
        for r in rows:
            est = "" if r.estimate is None else repr(r.estimate)
            print(f"{r.n},{r.variant},{r.len_a},{r.len_b},{r.depth},"
                  f"{r.depth_is_exact},{est}")
    return 0


# ---------------------------------------------------------------------------
# Parser


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fibwords",
        description="Fibonacci commutator words: construction, depth, girth, "
                    "laws, and almost laws on SU(k).",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    cache_default = os.environ.get(CACHE_ENV)

    p = sub.add_parser("build", help="print the construction pair at level n")
    p.add_argument("-n", type=int, required=True, help="construction level")
    p.add_argument("--variant", choices=(STANDARD, PRIMED), default=STANDARD)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("depth", help="lower-central-series depth of a word")
    p.add_argument("-w", "--word", required=True, help="word, e.g. abAB")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                   help="truncation degree (default %(default)s)")
    p.add_argument("--cache", default=cache_default, metavar="DIR")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_depth)

    p = sub.add_parser("alpha", help="shortest word at depth n (series girth)")
    p.add_argument("-n", type=int, required=True, help="series index")
    p.add_argument("--radius", type=int, default=None,
                   help="largest length to search (default: the known bound)")
    p.add_argument("-j", "--threads", type=int, default=1)
    p.add_argument("--cache", default=cache_default, metavar="DIR")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_alpha)

    p = sub.add_parser("verify", help="run every identity and remark suite")
    p.add_argument("--level", type=int, default=8,
                   help="check construction levels 0..N (default %(default)s)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("law", help="nilpotent law word and group checks")
    p.add_argument("--order", type=int, required=True,
                   help="largest group order the law must cover")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--group", metavar="FILE",
                     help="check one multiplication-table JSON file")
    src.add_argument("--catalog", action="store_true",
                     help="check every bundled nilpotent group of fitting order")
    p.add_argument("--cache", default=cache_default, metavar="DIR")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=_cmd_law)

    p = sub.add_parser("almost", help="almost-law seed search and decay table")
    p.add_argument("-k", type=int, default=2, help="SU(k) dimension")
    p.add_argument("--n-max", type=int, required=True,
                   help="deepest construction level to report")
    p.add_argument("--budget", type=int, required=True,
                   help="Haar samples per estimate")
    p.add_argument("--seed", type=int, default=None,
                   help="master seed (required with --json)")
    p.add_argument("--length-cap", type=int, default=DEFAULT_LENGTH_CAP)
    p.add_argument("--cache", default=cache_default, metavar="DIR")
    p.add_argument("--json", action="store_true",
                   help="JSON instead of the default CSV")
    p.set_defaults(fn=_cmd_almost)

    p = sub.add_parser("table", help="length/depth/exponent table")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--format", choices=("csv", "json"), required=True)
    p.add_argument("--depth-mode", choices=("bound", "magnus"), default="bound")
    p.set_defaults(fn=_cmd_table)

    return parser


def run(argv=None) -> int:
    parser = _make_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SeedSearchError as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return 1
    except WordParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
