"""Edge-disjoint root-to-target path systems.

Everything here goes through the residual kernel: a path system is a 0/1
flow, one augmentation either grows it by a path or exposes a blocking
vertex set whose entering edges meet every path exactly once.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from ._nets import masked_net, peel, plain_net, sink_net
from .digraph import GraphLike, RootedDigraph, as_subset, contract, in_edges
from .errors import GraphError, InvariantError, MalformedPathSystem, PreconditionError


@dataclass(frozen=True)
class Path:
    edges: tuple[str, ...]
    vertices: tuple[str, ...]

    @classmethod
    def from_edges(cls, graph: RootedDigraph, edges: Sequence[str]) -> "Path":
        edges = tuple(edges)
        if not edges:
            raise MalformedPathSystem("empty path")
        unknown = [e for e in edges if e not in graph.edges]
        if unknown:
            raise MalformedPathSystem(f"unknown edge {unknown[0]!r} in path")
        verts = [graph.edges[edges[0]].tail]
        for eid in edges:
            e = graph.edges[eid]
            if e.tail != verts[-1]:
                raise MalformedPathSystem(f"edge {eid!r} does not continue the path")
            verts.append(e.head)
        if len(set(verts)) != len(verts):
            raise MalformedPathSystem(f"path {' '.join(edges)} repeats a vertex")
        return cls(edges, tuple(verts))

    @property
    def first(self) -> str:
        return self.edges[0]

    @property
    def last(self) -> str:
        return self.edges[-1]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class PathSystem:
    target: str
    paths: tuple[Path, ...] = ()

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def edge_set(self) -> frozenset:
        return frozenset(e for p in self.paths for e in p.edges)

    def first_edges(self) -> frozenset:
        return frozenset(p.first for p in self.paths)

    def last_edges(self) -> frozenset:
        return frozenset(p.last for p in self.paths)

    def by_last_edge(self) -> dict[str, Path]:
        return {p.last: p for p in self.paths}

    def format(self) -> list[str]:
        return [f"path {self.target}: {' '.join(p.edges)}" for p in self.paths]


@dataclass(frozen=True)
class AugmentOutcome:
    augmented: Optional[PathSystem] = None
    blocked: Optional[frozenset] = None

    def __post_init__(self):
        if (self.augmented is None) == (self.blocked is None):
            raise InvariantError("exactly one augment outcome must be populated")


def make_system(D: GraphLike, target: str, paths: Iterable[Sequence[str]]) -> PathSystem:
    """Build and validate a path system from edge-id sequences."""
    F = as_subset(D)
    system = _system(F.graph, target, [Path.from_edges(F.graph, p) for p in paths])
    check_system(F, system)
    return system


def _system(graph: RootedDigraph, target: str, paths: Iterable[Path]) -> PathSystem:
    key = graph.eindex
    return PathSystem(target, tuple(sorted(paths, key=lambda p: key[p.last])))


def _paths_from_indices(graph: RootedDigraph, target: str, index_paths) -> PathSystem:
    ids = graph.edge_ids
    return _system(graph, target, [Path.from_edges(graph, [ids[i] for i in p]) for p in index_paths])


def check_system(D: GraphLike, P: PathSystem) -> None:
    """Raise ``MalformedPathSystem`` unless ``P`` is edge-disjoint root-to-target in ``D``."""
    F = as_subset(D)
    g = F.graph
    if P.target not in g.vindex:
        raise MalformedPathSystem(f"target {P.target!r} is not a vertex")
    if P.target == g.root:
        raise MalformedPathSystem("target must not be the root")
    used: set[str] = set()
    for p in P.paths:
        if Path.from_edges(g, p.edges) != p:
            raise MalformedPathSystem("path vertex sequence is inconsistent")
        if p.vertices[0] != g.root or p.vertices[-1] != P.target:
            raise MalformedPathSystem(f"path {' '.join(p.edges)} is not root-to-{P.target}")
        for e in p.edges:
            if e not in F.members:
                raise MalformedPathSystem(f"edge {e!r} is not in the graph")
            if e in used:
                raise MalformedPathSystem(f"edge {e!r} is used twice")
            used.add(e)


def augment(D: GraphLike, P: PathSystem) -> AugmentOutcome:
    """Grow ``P`` by one path, or return the set of vertices the root cannot reach.

    On success only the paths whose edges the augmenting walk reversed are
    rerouted; the rest are kept verbatim, so every root-out and target-in
    edge of ``P`` stays covered.
    """
    F = as_subset(D)
    check_system(F, P)
    g = F.graph
    net = plain_net(F)
    flow = net.new_flow()
    for e in P.edge_set():
        flow[g.eindex[e]] = 1
    before = bytes(flow)
    s, t = g.vindex[g.root], g.vindex[P.target]
    if not net.augment(flow, s, t):
        seen = net.reach(flow, s)
        return AugmentOutcome(blocked=frozenset(v for v in g.vertices if not seen[g.vindex[v]]))

    dropped = {g.edge_ids[i] for i in range(net.m) if before[i] and not flow[i]}
    added = {i for i in range(net.m) if flow[i] and not before[i]}
    touched = [p for p in P.paths if dropped.intersection(p.edges)]
    kept = [p for p in P.paths if not dropped.intersection(p.edges)]
    support = {g.eindex[e] for p in touched for e in p.edges if e not in dropped} | added
    rerouted = peel(g.tails, g.heads, support, s, t)
    if len(rerouted) != len(touched) + 1:
        raise InvariantError("augmenting walk did not decompose into k+1 paths")
    fresh = _paths_from_indices(g, P.target, rerouted)
    return AugmentOutcome(augmented=_system(g, P.target, kept + list(fresh.paths)))


def local_connectivity(D: GraphLike, v: str) -> int:
    """Maximum number of edge-disjoint root-to-``v`` paths."""
    F = as_subset(D)
    g = F.graph
    net = plain_net(F)
    return net.max_flow(net.new_flow(), g.vindex[g.root], g.vindex[v])


def max_path_system(D: GraphLike, v: str) -> PathSystem:
    F = as_subset(D)
    g = F.graph
    if v == g.root:
        raise PreconditionError("target must not be the root")
    if v not in g.vindex:
        raise GraphError(f"unknown vertex {v!r}")
    net = plain_net(F)
    flow = net.new_flow()
    s, t = g.vindex[g.root], g.vindex[v]
    net.max_flow(flow, s, t)
    support = [i for i in range(net.m) if flow[i]]
    return _paths_from_indices(g, v, peel(g.tails, g.heads, support, s, t))


def in_g(D: GraphLike, v: str, I: Iterable[str]) -> bool:
    """Can edge-disjoint root-to-``v`` paths end in every edge of ``I``?"""
    F = as_subset(D)
    I = frozenset(I)
    delta = in_edges(F, [v])
    if not I <= delta:
        raise PreconditionError("I must consist of ingoing edges of v")
    g = F.graph
    net = masked_net(F, set(delta - I))
    return net.max_flow(net.new_flow(), g.vindex[g.root], g.vindex[v]) == len(I)


def extend_witness(D: GraphLike, v: str, P: PathSystem) -> PathSystem:
    """Complete ``P`` to a system covering every ingoing edge of ``v``.

    The result keeps all root-out edges of ``P`` and uses at most ``n`` new
    ones, where ``n`` is the number of ingoing edges ``P`` misses.
    """
    F = as_subset(D)
    check_system(F, P)
    if P.target != v:
        raise MalformedPathSystem(f"system targets {P.target!r}, not {v!r}")
    missing = len(in_edges(F, [v])) - len(P)
    Q = P
    for _ in range(missing):
        out = augment(F, Q)
        if out.blocked is not None:
            raise PreconditionError(f"the ingoing edges of {v!r} cannot all be covered")
        Q = out.augmented
    old, new = P.first_edges(), Q.first_edges()
    if not old <= new or len(new - old) > missing:
        raise InvariantError("extend_witness changed more root-out edges than allowed")
    return Q


def terminal_segments(P: PathSystem, cut: frozenset, graph: RootedDigraph) -> list[tuple[str, ...]]:
    """For each path, the part starting at its last edge in ``cut``."""
    out = []
    for p in P.paths:
        idx = [i for i, e in enumerate(p.edges) if e in cut]
        if not idx:
            raise PreconditionError(f"path {' '.join(p.edges)} avoids the cut")
        out.append(p.edges[idx[-1]:])
    return out


def fillable_paths(D: GraphLike, X: Iterable[str]) -> Optional[dict[str, Path]]:
    """Edge-disjoint rX-paths, one ending in each edge entering ``X``; None if impossible."""
    F = as_subset(D)
    g = F.graph
    X = frozenset(X)
    if g.root in X:
        raise PreconditionError("a fillable set must avoid the root")
    delta = in_edges(F, X)
    if not delta:
        return {}
    net, sink = sink_net(F, X)
    flow = net.new_flow()
    s = g.vindex[g.root]
    if net.max_flow(flow, s, sink) != len(delta):
        return None
    heads = list(net.heads)
    support = [i for i in range(net.m) if flow[i]]
    paths = [Path.from_edges(g, [g.edge_ids[i] for i in p]) for p in peel(g.tails, heads, support, s, sink)]
    return {p.last: p for p in paths}


def extend_witness_over(D: GraphLike, U: Iterable[str], v: str, P: PathSystem) -> PathSystem:
    """Like ``extend_witness`` but measured on the edges entering the fillable set ``U``.

    Works in the digraph with everything outside ``U`` contracted into the
    root, then prefixes each resulting path with the fill path of its first
    edge.
    """
    F = as_subset(D)
    g = F.graph
    U = frozenset(U)
    if v not in U:
        raise PreconditionError(f"{v!r} is not in U")
    check_system(F, P)
    if P.target != v:
        raise MalformedPathSystem(f"system targets {P.target!r}, not {v!r}")
    fill = fillable_paths(F, U)
    if fill is None:
        raise PreconditionError("U is not fillable")
    cut = in_edges(F, U)
    outside = [x for x in g.vertices if x not in U]
    squeezed = contract(F, outside, g.root)
    tails = terminal_segments(P, cut, g)
    local = make_system(squeezed, v, tails)
    n = len(in_edges(F, [v])) - len(P)
    completed = extend_witness(squeezed, v, local)
    paths = [Path.from_edges(g, fill[q.first].edges + q.edges[1:]) for q in completed.paths]
    Q = _system(g, v, paths)
    check_system(F, Q)
    used_before = frozenset(s[0] for s in tails)
    used_after = frozenset(q.first for q in completed.paths)
    if not used_before <= used_after or len(used_after - used_before) > n:
        raise InvariantError("extend_witness_over used too many new entering edges")
    return Q
