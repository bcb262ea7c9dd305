"""Rooted multidigraphs, edge subsets, contraction and the text file format."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Union

from .errors import GraphError


def natural_key(token: str) -> tuple:
    """Sort key that orders ``e2`` before ``e10``."""
    parts = re.split(r"(\d+)", token)
    return tuple(int(p) if i % 2 else p for i, p in enumerate(parts))


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str


class RootedDigraph:
    """Finite multidigraph whose root has no ingoing edges.

    Vertices and edges are kept in natural token order; that order defines
    the dense indices used by the flow kernel and every tie-break.
    """

    def __init__(self, vertices: Iterable[str], root: str, edges: Iterable[Edge]):
        vertices = list(vertices)
        edges = list(edges)
        if len(set(vertices)) != len(vertices):
            dup = sorted({v for v in vertices if vertices.count(v) > 1})
            raise GraphError(f"duplicate vertex {dup[0]!r}")
        vset = set(vertices)
        if root not in vset:
            raise GraphError(f"root {root!r} is not a vertex")
        seen: set[str] = set()
        for e in edges:
            if e.id in seen:
                raise GraphError(f"duplicate edge id {e.id!r}")
            seen.add(e.id)
            for end in (e.tail, e.head):
                if end not in vset:
                    raise GraphError(f"edge {e.id!r}: endpoint {end!r} not declared")
            if e.tail == e.head:
                raise GraphError(f"edge {e.id!r}: loop at {e.tail!r}")
            if e.head == root:
                raise GraphError(f"edge {e.id!r}: edge into root")

        self.root = root
        self.vertices: tuple[str, ...] = tuple(sorted(vertices, key=natural_key))
        ordered = sorted(edges, key=lambda e: natural_key(e.id))
        self.edges: dict[str, Edge] = {e.id: e for e in ordered}
        self.edge_ids: tuple[str, ...] = tuple(self.edges)
        self.vindex = {v: i for i, v in enumerate(self.vertices)}
        self.eindex = {e: i for i, e in enumerate(self.edge_ids)}
        self.tails = [self.vindex[e.tail] for e in ordered]
        self.heads = [self.vindex[e.head] for e in ordered]

    def __repr__(self) -> str:
        return f"RootedDigraph(|V|={len(self.vertices)}, |E|={len(self.edges)}, root={self.root!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RootedDigraph):
            return NotImplemented
        return (
            self.root == other.root
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.root, self.vertices, tuple(self.edges.values())))

    @property
    def non_root(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if v != self.root)

    def subset(self, members: Iterable[str] = None) -> "EdgeSubset":
        if members is None:
            members = self.edge_ids
        return EdgeSubset(self, frozenset(members))

    def full(self) -> "EdgeSubset":
        return self.subset()


@dataclass(frozen=True)
class EdgeSubset:
    """A set of edge ids, read as the spanning subdigraph of ``graph``."""

    graph: RootedDigraph
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        unknown = self.members - self.graph.edges.keys()
        if unknown:
            raise GraphError(f"unknown edge id {sorted(unknown, key=natural_key)[0]!r}")

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, eid: str) -> bool:
        return eid in self.members

    def __iter__(self):
        return iter(self.ordered())

    @property
    def root(self) -> str:
        return self.graph.root

    def ordered(self) -> list[str]:
        return [e for e in self.graph.edge_ids if e in self.members]

    def with_edge(self, eid: str) -> "EdgeSubset":
        return EdgeSubset(self.graph, self.members | {eid})

    def without(self, eid: str) -> "EdgeSubset":
        return EdgeSubset(self.graph, self.members - {eid})

    @cached_property
    def active(self) -> bytearray:
        mask = bytearray(len(self.graph.edge_ids))
        for e in self.members:
            mask[self.graph.eindex[e]] = 1
        return mask

    def as_graph(self) -> RootedDigraph:
        g = self.graph
        return RootedDigraph(g.vertices, g.root, [g.edges[e] for e in self.ordered()])


GraphLike = Union[RootedDigraph, EdgeSubset]


def as_subset(D: GraphLike) -> EdgeSubset:
    if isinstance(D, EdgeSubset):
        return D
    if isinstance(D, RootedDigraph):
        return D.full()
    raise TypeError(f"expected RootedDigraph or EdgeSubset, got {type(D).__name__}")


def build_graph(vertices: Iterable[str], root: str, edges: Iterable) -> RootedDigraph:
    """Validate and build a rooted digraph; edges may be ``Edge`` or ``(id, tail, head)``."""
    recs = [e if isinstance(e, Edge) else Edge(*e) for e in edges]
    return RootedDigraph(vertices, root, recs)


def in_edges(D: GraphLike, X: Iterable[str]) -> frozenset:
    """Edges of ``D`` with head in ``X`` and tail outside ``X``."""
    F = as_subset(D)
    X = set(X)
    g = F.graph
    missing = X - set(g.vertices)
    if missing:
        raise GraphError(f"vertex {sorted(missing)[0]!r} not in graph")
    return frozenset(
        eid for eid in F.members
        if g.edges[eid].head in X and g.edges[eid].tail not in X
    )


def indegree(D: GraphLike, v: str) -> int:
    return len(in_edges(D, [v]))


def contract(D: GraphLike, U: Iterable[str], u: str) -> RootedDigraph:
    """Contract ``U`` to ``u``; surviving edges keep their ids.

    Edges inside ``U`` vanish. When ``u`` is the root, edges that would
    enter it are dropped as well.
    """
    F = as_subset(D)
    g = F.graph
    U = set(U)
    if u not in U:
        raise GraphError(f"contraction target {u!r} not in the contracted set")
    if not U <= set(g.vertices):
        raise GraphError("contracted set is not a subset of the vertices")
    if g.root in U and u != g.root:
        raise GraphError("a set containing the root must be contracted to the root")
    verts = [v for v in g.vertices if v not in U] + [u]
    out = []
    for eid in F.ordered():
        e = g.edges[eid]
        tail = u if e.tail in U else e.tail
        head = u if e.head in U else e.head
        if tail == head or head == g.root:
            continue
        out.append(Edge(eid, tail, head))
    return RootedDigraph(verts, g.root, out)


def random_digraph(n: int, m: int, seed: int, root: str = "r") -> RootedDigraph:
    """Seeded random rooted multidigraph with ``n`` vertices and ``m`` edges (none if n == 1)."""
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    rng = random.Random(seed)
    verts = [root] + [f"v{i}" for i in range(1, n)]
    edges = []
    if n > 1:
        for i in range(1, m + 1):
            head = verts[rng.randrange(1, n)]
            tail = head
            while tail == head:
                tail = verts[rng.randrange(n)]
            edges.append(Edge(f"e{i}", tail, head))
    return RootedDigraph(verts, root, edges)


# -- text format -----------------------------------------------------------

def parse_graph(text: str, source: str = "<string>") -> RootedDigraph:
    root = None
    vertices: dict[str, None] = {}
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        where = f"{source}:{lineno}"
        if parts[0] == "root":
            if len(parts) != 2:
                raise GraphError(f"{where}: expected 'root <vertex>'")
            if root is not None:
                raise GraphError(f"{where}: second root line")
            root = parts[1]
            vertices.setdefault(root)
        elif parts[0] == "vertex":
            if len(parts) != 2:
                raise GraphError(f"{where}: expected 'vertex <name>'")
            vertices.setdefault(parts[1])
        elif parts[0] == "edge":
            if len(parts) != 4:
                raise GraphError(f"{where}: expected 'edge <id> <tail> <head>'")
            if root is None:
                raise GraphError(f"{where}: edge before root line")
            _, eid, tail, head = parts
            vertices.setdefault(tail)
            vertices.setdefault(head)
            edges.append(Edge(eid, tail, head))
        else:
            raise GraphError(f"{where}: unknown directive {parts[0]!r}")
    if root is None:
        raise GraphError(f"{source}: missing root line")
    try:
        return RootedDigraph(vertices, root, edges)
    except GraphError as exc:
        raise GraphError(f"{source}: {exc}") from None


def serialize_graph(D: GraphLike) -> str:
    F = as_subset(D)
    lines = [f"root {F.root}"]
    g = F.graph
    mentioned = {F.root}
    for eid in F.members:
        mentioned.update((g.edges[eid].tail, g.edges[eid].head))
    lines += [f"vertex {v}" for v in g.vertices if v not in mentioned]
    for eid in F.ordered():
        e = g.edges[eid]
        lines.append(f"edge {e.id} {e.tail} {e.head}")
    return "\n".join(lines) + "\n"


def parse_subset(text: str, graph: RootedDigraph, source: str = "<string>") -> EdgeSubset:
    ids = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if len(line.split()) != 1 or line not in graph.edges:
            raise GraphError(f"{source}:{lineno}: unknown edge id {line!r}")
        ids.append(line)
    return EdgeSubset(graph, frozenset(ids))


def serialize_subset(F: EdgeSubset) -> str:
    return "".join(f"{e}\n" for e in F.ordered())
