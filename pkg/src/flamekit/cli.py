"""Command-line front end.

Exit codes: 0 success, 1 negative answer or unusable input (not a flame,
verification failed), 2 malformed input, 3 internal invariant breach.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import analysis, construction, pathflow
from .digraph import (
    EdgeSubset,
    RootedDigraph,
    natural_key,
    parse_graph,
    parse_subset,
    random_digraph,
    serialize_graph,
    serialize_subset,
)
from .errors import GraphError, InvariantError, PreconditionError

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_BUG = 0, 1, 2, 3


class Negative(Exception):
    """Raised by a command to exit 1 after its report is printed."""


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GraphError(f"{path}: {exc.strerror}") from None


def _load_graph(path: str) -> RootedDigraph:
    return parse_graph(_read(path), source=path)


def _load_subset(path: str, graph: RootedDigraph) -> EdgeSubset:
    return parse_subset(_read(path), graph, source=path)


def _vertices(vs) -> list[str]:
    return sorted(vs, key=natural_key)


def _precedence(spec: str, graph: RootedDigraph) -> list[str]:
    if spec == "lex":
        return list(graph.edge_ids)
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise GraphError(f"bad random seed in {spec!r}") from None
        order = list(graph.edge_ids)
        random.Random(seed).shuffle(order)
        return order
    if spec.startswith("file:"):
        path = spec.split(":", 1)[1]
        order = []
        for lineno, raw in enumerate(_read(path).splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if line not in graph.edges:
                raise GraphError(f"{path}:{lineno}: unknown edge id {line!r}")
            order.append(line)
        return order
    raise GraphError(f"precedence must be lex, random:<seed> or file:<path>, not {spec!r}")


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write("".join(line + "\n" for line in text_lines))


# -- commands ---------------------------------------------------------------

def cmd_check(args) -> None:
    graph = _load_graph(args.graph)
    report = analysis.flame_report(graph)
    bad = [r.vertex for r in report if not r.ok]
    lines = [
        f"vertex {r.vertex} indegree {r.indegree} connectivity {r.connectivity} {'ok' if r.ok else 'FAIL'}"
        for r in report
    ]
    payload = {
        "flame": not bad,
        "offending": bad,
        "vertices": [
            {"vertex": r.vertex, "indegree": r.indegree, "connectivity": r.connectivity, "ok": r.ok}
            for r in report
        ],
    }
    if args.witness:
        witness = {}
        for r in report:
            system = pathflow.max_path_system(graph, r.vertex)
            witness[r.vertex] = [list(p.edges) for p in system]
            lines += system.format()
        payload["witness"] = witness
    lines.append("flame: yes" if not bad else "flame: no (" + " ".join(bad) + ")")
    _emit(args, payload, lines)
    if bad:
        raise Negative


def _order_payload(result: construction.BuildOrder) -> dict:
    return {"order": [{"edge": e, "role": p} for e, p in zip(result.order, result.provenance)]}


def cmd_order(args) -> None:
    graph = _load_graph(args.graph)
    if not analysis.is_flame(graph):
        raise PreconditionError("input is not a flame")
    result = construction.build_order(graph, _precedence(args.precedence, graph))
    if args.verify:
        prefix = EdgeSubset(graph, frozenset())
        if not analysis.is_flame(prefix):
            raise InvariantError("empty prefix is not a flame")
        for i, e in enumerate(result.order, 1):
            prefix = prefix.with_edge(e)
            if not analysis.is_flame(prefix):
                raise InvariantError(f"prefix of length {i} is not a flame")
    payload = _order_payload(result)
    if args.verify:
        payload["verified"] = True
    _emit(args, payload, result.lines())


def cmd_extract(args) -> None:
    graph = _load_graph(args.graph)
    order = _precedence(args.order, graph)
    F = construction.extract_minimal_preserver(graph, order)
    payload = {"edges": F.ordered()}
    text = serialize_graph(F) if args.graph_output else serialize_subset(F)
    _emit(args, payload, text.splitlines())


def _analysed(args) -> EdgeSubset:
    graph = _load_graph(args.graph)
    return _load_subset(args.subset, graph) if args.subset else graph.full()


def cmd_fill(args) -> None:
    F = _analysed(args)
    X = frozenset(args.set)
    closure = analysis.fill_closure(F, X)
    payload = {"set": _vertices(X), "fill": _vertices(closure), "fillable": closure == X}
    _emit(args, payload, [" ".join(_vertices(closure))])


def cmd_tight(args) -> None:
    F = _analysed(args)
    result = analysis.largest_tight_set(F, args.vertex)
    payload = {
        "vertex": result.vertex,
        "tight_set": _vertices(result.tight_set),
        "cut": sorted(result.cut, key=natural_key),
    }
    _emit(args, payload, [" ".join(_vertices(result.tight_set))])


def cmd_insert(args) -> None:
    graph = _load_graph(args.graph)
    F = _load_subset(args.subset, graph)
    if args.helpers:
        witnesses = analysis.witness_family(graph)
        steps = construction.insert_with_helpers(
            F, args.edge, witnesses, _precedence(args.precedence, graph)
        )
        roles = ["helper"] * (len(steps) - 1) + ["target"]
        result = construction.BuildOrder(tuple(steps), tuple(roles))
        _emit(args, _order_payload(result), result.lines())
        return
    ok = construction.can_insert(F, args.edge)
    _emit(args, {"edge": args.edge, "insertable": ok}, [f"insertable: {'yes' if ok else 'no'}"])
    if not ok:
        raise Negative


def cmd_gen(args) -> None:
    graph = random_digraph(args.vertices, args.edges, args.seed)
    target = construction.extract_minimal_preserver(graph) if args.flame else graph.full()
    text = serialize_graph(target)
    if args.format == "json":
        g = target.graph
        payload = {
            "root": g.root,
            "vertices": list(g.vertices),
            "edges": [[e, g.edges[e].tail, g.edges[e].head] for e in target.ordered()],
        }
        _emit(args, payload, [])
    else:
        sys.stdout.write(text)


def cmd_verify_chain(args) -> None:
    graph = _load_graph(args.graph)
    paths = [p for p in args.chain.split(",") if p] if args.chain else []
    layers = [_load_subset(p, graph).members for p in paths]
    verdict = construction.verify_layered_chain(graph, layers)
    lines = []
    for layer in verdict.layers:
        status = "pass" if layer.ok else "FAIL: " + "; ".join(layer.problems)
        lines.append(f"layer {layer.index}: {status}")
    lines.append(f"chain: {'pass' if verdict.ok else 'FAIL'}")
    payload = {
        "ok": verdict.ok,
        "complete": verdict.complete,
        "max_connectivity": verdict.max_connectivity,
        "min_connectivity": verdict.min_connectivity,
        "layers": [
            {
                "index": layer.index,
                "ok": layer.ok,
                "flame": layer.flame,
                "connectivity": layer.connectivity,
                "branching": layer.branching,
                "spanning_arborescence": layer.spanning_arborescence,
                "problems": layer.problems,
            }
            for layer in verdict.layers
        ],
    }
    _emit(args, payload, lines)
    if not verdict.ok:
        raise Negative


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="flamekit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[fmt], help="is the digraph a flame?")
    p.add_argument("graph")
    p.add_argument("--witness", action="store_true", help="print a maximum path system per vertex")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("order", parents=[fmt], help="edge order whose every prefix is a flame")
    p.add_argument("graph")
    p.add_argument("--precedence", default="lex", help="lex | random:<seed> | file:<path>")
    p.add_argument("--verify", action="store_true", help="re-check every prefix")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("extract", parents=[fmt], help="edge-minimal connectivity preserver")
    p.add_argument("graph")
    p.add_argument("--order", default="lex", help="deletion order: lex | random:<seed> | file:<path>")
    p.add_argument("--graph", dest="graph_output", action="store_true", help="emit a graph file")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("fill", parents=[fmt], help="smallest fillable superset")
    p.add_argument("graph")
    p.add_argument("--set", nargs="*", default=[], metavar="VERTEX")
    p.add_argument("--subset", help="analyse this edge subset instead of the whole graph")
    p.set_defaults(func=cmd_fill)

    p = sub.add_parser("tight", parents=[fmt], help="largest v-tight set")
    p.add_argument("graph")
    p.add_argument("--vertex", required=True)
    p.add_argument("--subset", help="analyse this edge subset instead of the whole graph")
    p.set_defaults(func=cmd_tight)

    p = sub.add_parser("insert", parents=[fmt], help="can an edge be added to a subflame?")
    p.add_argument("graph")
    p.add_argument("--subset", required=True)
    p.add_argument("--edge", required=True)
    p.add_argument("--helpers", action="store_true", help="list helper edges that make it insertable")
    p.add_argument("--precedence", default="lex", help="helper tie-break order")
    p.set_defaults(func=cmd_insert)

    p = sub.add_parser("gen", parents=[fmt], help="seeded random rooted digraph")
    p.add_argument("--vertices", type=int, required=True)
    p.add_argument("--edges", type=int, default=0)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--flame", action="store_true", help="reduce to a minimal preserver (a flame)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify-chain", parents=[fmt], help="check a layered chain of subflames")
    p.add_argument("graph")
    p.add_argument("--chain", default="", help="comma-separated subset files, innermost first")
    p.set_defaults(func=cmd_verify_chain)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except Negative:
        return EXIT_NO
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO
    except InvariantError as exc:
        print(f"internal error (please report): {exc}", file=sys.stderr)
        return EXIT_BUG
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
