"""Command-line front end.

Every subcommand reads graph files, calls one library entry point, and
reports. Exit codes: 0 positive/success, 1 negative decision, 2 usage or
input error, 3 search budget exhausted. ``--json`` replaces the human
report with one JSON record on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from .digraph import Digraph
from .experiment import run_experiment
from .graphio import GraphFormatError, read_graph, serialize_graph, to_dot, write_graph
from .isomorphism import find_isomorphism
from .power import power, verify_root
from .reduction import reduce, subdivide, suspend, theorem2_reduction
from .rootsearch import SearchStatus, backtracking_root_search, exhaustive_roots
from .subdivision import (
    HypothesisError,
    NotASubdivision,
    RootInconsistency,
    decide_root_in_class,
    extract_isomorphisms,
    find_core,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class Report:
    def __init__(self, command: str, args: argparse.Namespace) -> None:
        self.record: dict[str, Any] = {"command": command, "inputs": {}, "statistics": {}}
        self.lines: list[str] = []
        self.args = args
        if getattr(args, "k", None) is not None:
            self.record["k"] = args.k

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def graph(self, key: str, g: Digraph, out: str | None, dot: str | None = None,
              annotations: Sequence[str] | None = None, label: str | None = None) -> None:
        text = serialize_graph(g)
        self.record[key] = text
        if out:
            write_graph(out, g)
            self.record.setdefault("witness_file", out)
            self.say(f"{label or key}: written to {out}")
        else:
            if label:
                self.say(f"{label}:")
            self.lines.append(text.rstrip("\n"))
        if dot:
            with open(dot, "w", encoding="utf-8") as fh:
                fh.write(to_dot(g, key, annotations))

    def emit(self) -> None:
        if self.args.json:
            print(json.dumps(self.record, sort_keys=True))
        else:
            for line in self.lines:
                print(line)


def _load(path: str, report: Report, key: str) -> Digraph:
    report.record["inputs"][key] = path
    return read_graph(path).graph


def cmd_power(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    rep.graph("result", power(d, args.k), args.out, args.dot)
    return EXIT_OK


def cmd_verify_root(args, rep: Report) -> int:
    r = _load(args.root, rep, "root")
    d = _load(args.graph, rep, "graph")
    ok = verify_root(r, args.k, d)
    rep.record["result"] = ok
    rep.say(f"R^{args.k} {'=' if ok else '!='} D")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_root_exhaustive(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    roots = exhaustive_roots(d, args.k)
    rep.record["result"] = [serialize_graph(r) for r in roots]
    rep.record["statistics"]["roots"] = len(roots)
    rep.say(f"{len(roots)} k-th root(s) for k={args.k}")
    if roots:
        rep.graph("witness", roots[0], args.out, args.dot, label="first root")
    return EXIT_OK if roots else EXIT_NEGATIVE


def cmd_root_search(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    outcome = backtracking_root_search(d, args.k, args.budget)
    rep.record["result"] = outcome.status.value
    rep.record["statistics"] = {"nodes": outcome.nodes, "work_units": outcome.work_units}
    rep.say(f"{outcome.status.value} after {outcome.nodes} nodes")
    if outcome.witness is not None:
        rep.graph("witness", outcome.witness, args.out, args.dot, label="root")
    return {
        SearchStatus.ROOT_FOUND: EXIT_OK,
        SearchStatus.NO_ROOT: EXIT_NEGATIVE,
        SearchStatus.BUDGET_EXHAUSTED: EXIT_BUDGET,
    }[outcome.status]


def cmd_reduce(args, rep: Report) -> int:
    d1 = _load(args.first, rep, "first")
    d2 = _load(args.second, rep, "second")
    inst = reduce(d1, d2, args.k)
    notes = [p.describe() for p in inst.provenance]
    rep.record["provenance"] = notes
    rep.graph("result", inst.graph, args.out, args.dot, notes)
    return EXIT_OK


def cmd_suspend(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    g, roles = suspend(d)
    rep.graph("result", g, args.out, args.dot, roles)
    return EXIT_OK


def cmd_subdivide(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    g, _ = subdivide(d)
    rep.graph("result", g, args.out, args.dot)
    return EXIT_OK


def cmd_find_core(args, rep: Report) -> int:
    s = _load(args.graph, rep, "graph")
    try:
        witness = find_core(s)
    except NotASubdivision as exc:
        rep.record["result"] = "not-a-subdivision"
        rep.record["evidence"] = {"reason": exc.reason, "at": exc.witness}
        rep.say(str(exc))
        return EXIT_NEGATIVE
    rep.record["core"] = list(witness.core_order)
    rep.say("core: " + " ".join(map(str, witness.core_order)))
    rep.graph("result", witness.parent, args.out, args.dot, label="parent")
    return EXIT_OK


def cmd_extract_iso(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    r = _load(args.root, rep, "root")
    try:
        maps = extract_isomorphisms(d, r, args.k)
    except RootInconsistency as exc:
        rep.record["result"] = "inconsistent"
        rep.record["evidence"] = str(exc)
        rep.say(f"root inconsistent: {exc}")
        return EXIT_NEGATIVE
    rep.record["result"] = [list(m.forward) for m in maps]
    for j, m in enumerate(maps, start=1):
        rep.say(f"component 0 -> component {j}: " + " ".join(map(str, m.forward)))
    return EXIT_OK


def cmd_decide(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    decision = decide_root_in_class(d, args.k)
    if not decision.has_root:
        rep.record["result"] = "no-root"
        rep.record["evidence"] = {"non_isomorphic_components": list(decision.evidence)}
        i, j = decision.evidence
        rep.say(f"no-root: components {i} and {j} are not isomorphic")
        return EXIT_NEGATIVE
    rep.say("root found")
    rep.graph("result", decision.root, args.out, args.dot, label="root")
    return EXIT_OK


def cmd_theorem2(args, rep: Report) -> int:
    d = _load(args.graph, rep, "graph")
    e1, e2 = theorem2_reduction(d, args.k)
    rep.graph("E1", e1, args.out1, None, label="E1")
    rep.graph("E2", e2, args.out2, None, label="E2")
    return EXIT_OK


def cmd_iso(args, rep: Report) -> int:
    d1 = _load(args.first, rep, "first")
    d2 = _load(args.second, rep, "second")
    phi = find_isomorphism(d1, d2)
    if phi is None:
        rep.record["result"] = None
        rep.say("not isomorphic")
        return EXIT_NEGATIVE
    rep.record["result"] = list(phi.forward)
    rep.say("isomorphic: " + " ".join(map(str, phi.forward)))
    return EXIT_OK


def cmd_experiment(args, rep: Report) -> int:
    ks = sorted(set(args.k))
    rep.record["k"] = ks
    rep.record["inputs"] = {
        "trials": args.trials, "max_n": args.max_n, "seed": args.seed, "oracle": args.oracle,
    }
    res = run_experiment(args.trials, args.max_n, ks, args.seed, args.oracle)
    rep.record["result"] = {"agreement": res.agreement, "diagonal": res.diagonal}
    rep.record["statistics"] = {"oracle_mismatches": res.oracle_mismatches, "trials": res.trials}
    rep.say(f"{'':8}{'root':>8}{'no-root':>9}")
    for side in ("iso", "non-iso"):
        rep.say(f"{side:8}{res.agreement[side + '/root']:>8}{res.agreement[side + '/no-root']:>9}")
    if args.oracle:
        rep.say(f"oracle mismatches: {res.oracle_mismatches}")
    rep.say("agreement: " + ("diagonal" if res.diagonal else "OFF-DIAGONAL"))
    return EXIT_OK if res.diagonal else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="digraph-roots", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, *, k: bool = True, out: bool = True, help: str = ""):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="emit one JSON record instead of text")
        if k:
            p.add_argument("--k", type=int, required=True)
        if out:
            p.add_argument("--out", help="write the resulting graph here")
            p.add_argument("--dot", help="also write a DOT rendering here")
        return p

    add("power", cmd_power, help="k-th power").add_argument("graph")
    p = add("verify-root", cmd_verify_root, out=False, help="check R^k = D")
    p.add_argument("root")
    p.add_argument("graph")
    add("root-exhaustive", cmd_root_exhaustive, help="enumerate all roots (n <= 5)").add_argument("graph")
    p = add("root-search", cmd_root_search, help="pruned complete root search")
    p.add_argument("graph")
    p.add_argument("--budget", type=int, default=10**6, help="search-node limit")
    p = add("reduce", cmd_reduce, help="isomorphism-to-root reduction")
    p.add_argument("first")
    p.add_argument("second")
    add("suspend", cmd_suspend, k=False).add_argument("graph")
    add("subdivide", cmd_subdivide, k=False).add_argument("graph")
    add("find-core", cmd_find_core, k=False).add_argument("graph")
    p = add("extract-iso", cmd_extract_iso, out=False, help="isomorphisms from a root")
    p.add_argument("graph")
    p.add_argument("root")
    add("decide-class-root", cmd_decide).add_argument("graph")
    p = add("theorem2-split", cmd_theorem2, out=False, help="root question -> isomorphism question")
    p.add_argument("graph")
    p.add_argument("--out1")
    p.add_argument("--out2")
    p = add("iso", cmd_iso, k=False, out=False)
    p.add_argument("first")
    p.add_argument("second")
    p = add("experiment", cmd_experiment, k=False, out=False, help="random agreement table")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--k", type=int, nargs="+", default=[2, 3])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="cross-check with permutation brute force")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    rep = Report(args.command, args)
    try:
        code = args.func(args, rep)
    except (GraphFormatError, HypothesisError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    rep.emit()
    return code


if __name__ == "__main__":
    sys.exit(main())
