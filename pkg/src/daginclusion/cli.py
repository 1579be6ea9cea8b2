"""Command-line interface.

Exit codes: 0 affirmative result, 1 negative result, 2 error.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager

from . import __version__
from .dag import Dag
from .equivalence import equivalent, reversal_sequence
from .errors import CapExceeded, DagError, InternalInvariantBroken
from .fuzz import exhaustive_pairs, locality_pair, random_pairs, sweep_conditions, sweep_meek
from .inclusion import CONDITION_SETS, condition_report, enforced_violations, includes
from .io import dag_to_json, load_dag, sequence_from_json, sequence_to_json
from .oracle import default_nodes, enumerate_dags, max_n, model
from .ops import TransformSequence
from .separation import DisjointTriplet, d_connected, d_separated, find_dependence_complex
from .transform import Exhausted, default_max_steps, meek_search, one_edge_sequence

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2


class _Context:
    """Remembers which file is being read so errors can name it."""

    path = None


@contextmanager
def _reading(path):
    _Context.path = path
    yield
    # left set when the body raises, so the error message can name the file
    _Context.path = None


def _load(path) -> Dag:
    with _reading(path):
        return load_dag(path).dag


def _names(arg: str) -> list[str]:
    return [x for x in arg.split(",") if x] if arg else []


def _complex_json(k):
    return {"path": list(k.pi), "ropes": {d: list(r) for d, r in sorted(k.ropes.items())}}


def _complex_text(k) -> str:
    out = "path " + " - ".join(k.pi)
    for d, rope in sorted(k.ropes.items()):
        out += f"; rope({d}) " + " -> ".join(rope)
    return out


def _pair_json(pair):
    k, l = pair
    return {"K": dag_to_json(k), "L": dag_to_json(l)}


def _pair_text(pair) -> str:
    k, l = pair
    fmt = lambda g: ", ".join(f"{t}->{h}" for t, h in sorted(g.arrows)) or "(no arrows)"  # noqa: E731
    return f"K: {fmt(k)} | L: {fmt(l)}"


def _emit(args, doc: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _sequence_lines(seq: TransformSequence) -> list[str]:
    return [f"  {i + 1}. {op}" for i, op in enumerate(seq.ops)]


# -- commands -------------------------------------------------------------------------


def cmd_dsep(args) -> int:
    g = _load(args.file)
    t = DisjointTriplet(_names(args.a), _names(args.b), _names(args.c))
    if not d_connected(g, t):
        _emit(args, {"command": "dsep", "verdict": "SEPARATED", "triplet": str(t)}, ["SEPARATED"])
        return EXIT_YES
    witness = None
    for a in sorted(t.A):
        for b in sorted(t.B):
            witness = find_dependence_complex(g, a, b, t.C)
            if witness is not None:
                break
        if witness is not None:
            break
    doc = {"command": "dsep", "verdict": "CONNECTED", "triplet": str(t), "witness": _complex_json(witness)}
    _emit(args, doc, ["CONNECTED", "witness: " + _complex_text(witness)])
    return EXIT_NO


def cmd_model(args) -> int:
    g = _load(args.file)
    stmts = sorted(model(g).statements, key=lambda s: (len(s.C), sorted(s.C), sorted(s.A), sorted(s.B)))
    doc = {"command": "model", "nodes": list(g.nodes), "statements": [str(s) for s in stmts]}
    _emit(args, doc, [str(s) for s in stmts] + [f"{len(stmts)} statements"])
    return EXIT_YES


def cmd_equiv(args) -> int:
    k, l = _load(args.fileK), _load(args.fileL)
    verdict = equivalent(k, l)
    doc = {"command": "equiv", "verdict": "EQUIVALENT" if verdict else "NOT EQUIVALENT"}
    lines = [doc["verdict"]]
    if verdict and args.sequence:
        seq = TransformSequence(l, tuple(reversal_sequence(l, k)))
        doc["sequence"] = sequence_to_json(seq, k)
        lines += [f"{len(seq)} legal reversals from L to K:"] + _sequence_lines(seq)
    _emit(args, doc, lines)
    return EXIT_YES if verdict else EXIT_NO


def cmd_includes(args) -> int:
    k, l = _load(args.fileK), _load(args.fileL)
    if includes(k, l):
        _emit(args, {"command": "includes", "verdict": "INCLUDED"}, ["INCLUDED"])
        return EXIT_YES
    _, (u, v) = next(enforced_violations(k, l))
    sep = sorted((k.parents(u) | k.parents(v)) - {u, v})
    witness = find_dependence_complex(l, u, v, sep)
    doc = {
        "command": "includes",
        "verdict": "NOT INCLUDED",
        "violation": {"u": u, "v": v, "separator": sep, "complex_in_L": _complex_json(witness)},
    }
    lines = [
        "NOT INCLUDED",
        f"{u} and {v} are non-adjacent in K but d-connected in L given {{{', '.join(sep)}}}",
        "witness in L: " + _complex_text(witness),
    ]
    _emit(args, doc, lines)
    return EXIT_NO


def cmd_conditions(args) -> int:
    k, l = _load(args.fileK), _load(args.fileL)
    rep = condition_report(args.set, k, l)
    doc = {
        "command": "conditions",
        "set": args.set,
        "satisfied": rep.satisfied,
        "violations": [{"condition": c, "witness": list(w)} for c, w in rep.violations],
    }
    lines = ["SATISFIED" if rep.satisfied else "VIOLATED"]
    lines += [f"  ({c}) at {', '.join(w)}" for c, w in rep.violations]
    _emit(args, doc, lines)
    return EXIT_YES if rep.satisfied else EXIT_NO


def cmd_one_edge(args) -> int:
    l, k = _load(args.fileL), _load(args.fileK)
    seq = one_edge_sequence(l, k)
    doc = {"command": "one-edge", "verdict": "FOUND", "shape": seq.shape(), "sequence": sequence_to_json(seq, k)}
    _emit(args, doc, [f"FOUND ({seq.shape()})"] + _sequence_lines(seq))
    return EXIT_YES


def cmd_meek(args) -> int:
    l, k = _load(args.fileL), _load(args.fileK)
    steps = args.max_steps if args.max_steps is not None else default_max_steps(k)
    result = meek_search(l, k, max_steps=steps)
    if isinstance(result, Exhausted):
        doc = {"command": "meek", "verdict": "EXHAUSTED", "complete": result.complete, "explored": result.explored}
        note = "state space exhausted" if result.complete else f"depth bound {steps} reached"
        _emit(args, doc, [f"EXHAUSTED ({note}, {result.explored} graphs explored)"])
        return EXIT_NO
    doc = {"command": "meek", "verdict": "FOUND", "shape": result.shape(), "sequence": sequence_to_json(result, k)}
    _emit(args, doc, [f"FOUND ({len(result)} steps)"] + _sequence_lines(result))
    return EXIT_YES


def _fuzz_pairs(args):
    if args.exhaustive:
        if args.n > max_n():
            raise CapExceeded(f"{args.n} nodes exceeds DAG_INCLUSION_MAX_N={max_n()}")
        return exhaustive_pairs(args.n)
    return random_pairs(args.n, args.trials, args.seed)


def cmd_fuzz(args) -> int:
    limit = args.limit
    if args.target == "conditions":
        rep = sweep_conditions(_fuzz_pairs(args))
        doc = {
            "command": "fuzz conditions",
            "pairs": rep.pairs,
            "included": rep.included,
            "basic_and_verma_pass_not_included": [_pair_json(p) for p in rep.insufficient],
            "inclusion_conditions_pass_not_included": [_pair_json(p) for p in rep.inclusion_insufficient],
            "anomalies": [{"what": w, **_pair_json(p)} for w, p in rep.anomalies],
        }
        lines = [
            f"pairs: {rep.pairs}, included: {rep.included}",
            f"basic and Verma conditions pass but not included: {len(rep.insufficient)}",
        ]
        lines += ["  " + _pair_text(p) for p in rep.insufficient[:limit]]
        lines.append(f"inclusion conditions pass but not included: {len(rep.inclusion_insufficient)}")
        lines += ["  " + _pair_text(p) for p in rep.inclusion_insufficient[:limit]]
        lines.append(f"anomalies: {len(rep.anomalies)}")
        lines += [f"  {w}: {_pair_text(p)}" for w, p in rep.anomalies[:limit]]
        _emit(args, doc, lines)
        return EXIT_YES if not rep.anomalies else EXIT_NO
    if args.target == "meek":
        rep = sweep_meek(_fuzz_pairs(args))
        doc = {
            "command": "fuzz meek",
            "pairs": rep.pairs,
            "included": rep.included,
            "solved": rep.solved,
            "longest_sequence": rep.longest,
            "counterexamples": [_pair_json(p) for p in rep.counterexamples],
            "not_simple_shape": [_pair_json(p) for p in rep.not_simple],
        }
        lines = [
            f"pairs: {rep.pairs}, included: {rep.included}, solved: {rep.solved}, longest: {rep.longest}",
            f"counterexamples: {len(rep.counterexamples)}",
        ]
        lines += ["  " + _pair_text(p) for p in rep.counterexamples[:limit]]
        lines.append(f"included pairs without a reversals-additions-reversals sequence: {len(rep.not_simple)}")
        lines += ["  " + _pair_text(p) for p in rep.not_simple[:limit]]
        _emit(args, doc, lines)
        return EXIT_YES if not rep.counterexamples else EXIT_NO
    # locality
    rows = []
    for length in range(1, args.n + 1):
        for trial in range(args.trials):
            k, l = locality_pair(length, seed=args.seed + trial)
            z = [x for x in k.nodes if x not in ("a", "b")]
            rows.append(
                {
                    "length": length,
                    "seed": args.seed + trial,
                    "L": dag_to_json(l),
                    "included": includes(k, l),
                    "separated_in_L": d_separated(l, "a", "b", z),
                }
            )
    ok = all(r["included"] and r["separated_in_L"] for r in rows)
    doc = {"command": "fuzz locality", "all_included": ok, "cases": rows}
    lines = [
        f"path length {r['length']} seed {r['seed']}: {'INCLUDED' if r['included'] else 'NOT INCLUDED'}"
        for r in rows
    ]
    _emit(args, doc, lines)
    return EXIT_YES if ok else EXIT_NO


def cmd_enumerate(args) -> int:
    counts = {}
    for n in range(1, args.n + 1):
        counts[n] = sum(1 for _ in enumerate_dags(default_nodes(n)))
    doc = {"command": "enumerate", "counts": {str(n): c for n, c in counts.items()}}
    _emit(args, doc, [f"n={n}: {c} DAGs" for n, c in counts.items()])
    return EXIT_YES


def cmd_replay(args) -> int:
    with _reading(args.file):
        with open(args.file, encoding="utf-8") as fh:
            doc = json.load(fh)
    if "sequence" in doc:
        doc = doc["sequence"]
    seq, target = sequence_from_json(doc)
    try:
        final = seq.target
    except DagError as e:
        _emit(args, {"command": "replay", "verdict": "FAILED", "reason": str(e)}, [f"REPLAY FAILED: {e}"])
        return EXIT_NO
    if final != target:
        reason = "final graph differs from target"
        _emit(args, {"command": "replay", "verdict": "FAILED", "reason": reason}, [f"REPLAY FAILED: {reason}"])
        return EXIT_NO
    _emit(args, {"command": "replay", "verdict": "OK", "steps": len(seq)}, [f"REPLAY OK ({len(seq)} steps)"])
    return EXIT_YES


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print one JSON document")

    p = argparse.ArgumentParser(prog="daginclusion", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("dsep", parents=[common], help="d-separation query (exit 0 iff separated)")
    s.add_argument("file")
    s.add_argument("--a", required=True, help="comma-separated node names")
    s.add_argument("--b", required=True)
    s.add_argument("--c", default="")
    s.set_defaults(func=cmd_dsep)

    s = sub.add_parser("model", parents=[common], help="list the induced independence model")
    s.add_argument("file")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("equiv", parents=[common], help="Markov equivalence of K and L")
    s.add_argument("fileK")
    s.add_argument("fileL")
    s.add_argument("--sequence", action="store_true", help="print legal reversals from L to K")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("includes", parents=[common], help="decide I(K) ⊆ I(L)")
    s.add_argument("fileK")
    s.add_argument("fileL")
    s.set_defaults(func=cmd_includes)

    s = sub.add_parser("conditions", parents=[common], help="check a family of inclusion conditions")
    s.add_argument("fileK")
    s.add_argument("fileL")
    s.add_argument("--set", choices=CONDITION_SETS, default="basic")
    s.set_defaults(func=cmd_conditions)

    s = sub.add_parser("one-edge", parents=[common], help="sequence for K with one extra adjacency")
    s.add_argument("fileL")
    s.add_argument("fileK")
    s.set_defaults(func=cmd_one_edge)

    s = sub.add_parser("meek", parents=[common], help="search reversals/additions from L to K")
    s.add_argument("fileL")
    s.add_argument("fileK")
    s.add_argument("--max-steps", type=int, default=None)
    s.set_defaults(func=cmd_meek)

    s = sub.add_parser("fuzz", parents=[common], help="sweep pairs of DAGs")
    s.add_argument("target", choices=("meek", "conditions", "locality"))
    s.add_argument("--n", type=int, required=True, help="node count (path length for locality)")
    s.add_argument("--exhaustive", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--limit", type=int, default=5, help="examples shown per finding in text mode")
    s.set_defaults(func=cmd_fuzz)

    s = sub.add_parser("enumerate", parents=[common], help="count labeled DAGs for n = 1..N")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("replay", parents=[common], help="verify a JSON sequence document")
    s.add_argument("file")
    s.set_defaults(func=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _Context.path = None
    if args.command == "enumerate" and args.n > max_n():
        print(f"error: {args.n} exceeds DAG_INCLUSION_MAX_N={max_n()}", file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.func(args)
    except (DagError, InternalInvariantBroken, OSError, json.JSONDecodeError, KeyError) as e:
        where = f"{_Context.path}: " if _Context.path else ""
        print(f"error: {where}{e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
