"""Flame, fillable and tight-set predicates.

All three reduce to minimum cuts. With ``d(W)`` the number of edges
entering ``W``:

* ``X`` is fillable iff ``d(X) <= d(W)`` for every ``W ⊇ X`` avoiding the
  root, i.e. the max flow from the root into ``X`` (merged to a sink, edges
  leaving ``X`` removed) saturates every entering edge.
* ``d`` is submodular, so the minimisers over supersets of ``X`` form a
  lattice whose bottom is the smallest fillable superset. It is read off a
  single maximum flow as the set of vertices that can still reach the sink
  in the residual network.
* ``T ∋ v`` is v-tight iff ``d(T)`` equals the indegree of ``v``; the
  largest such set is everything the root cannot reach in the residual
  network of a full witness flow.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from ._nets import plain_net, sink_net
from .digraph import GraphLike, as_subset, in_edges
from .errors import GraphError, PreconditionError
from .pathflow import Path, max_path_system


@dataclass(frozen=True)
class TightResult:
    vertex: str
    tight_set: frozenset
    cut: frozenset


@dataclass(frozen=True)
class VertexReport:
    vertex: str
    indegree: int
    connectivity: int

    @property
    def ok(self) -> bool:
        return self.indegree == self.connectivity


def flame_report(F: GraphLike) -> list[VertexReport]:
    """Indegree and root connectivity of every non-root vertex."""
    F = as_subset(F)
    g = F.graph
    net = plain_net(F)
    s = g.vindex[g.root]
    indeg = [0] * len(g.vertices)
    for e in F.members:
        indeg[g.vindex[g.edges[e].head]] += 1
    out = []
    for v in g.non_root:
        t = g.vindex[v]
        out.append(VertexReport(v, indeg[t], net.max_flow(net.new_flow(), s, t)))
    return out


def is_flame(F: GraphLike) -> bool:
    F = as_subset(F)
    g = F.graph
    net = plain_net(F)
    s = g.vindex[g.root]
    indeg = [0] * len(g.vertices)
    for e in F.members:
        indeg[g.vindex[g.edges[e].head]] += 1
    for v in g.non_root:
        t = g.vindex[v]
        if indeg[t] and net.max_flow(net.new_flow(), s, t) != indeg[t]:
            return False
    return True


def _check_vertex_set(F, X) -> frozenset:
    X = frozenset(X)
    g = F.graph
    unknown = X - g.vindex.keys()
    if unknown:
        raise GraphError(f"unknown vertex {sorted(unknown)[0]!r}")
    if g.root in X:
        raise PreconditionError("the vertex set must not contain the root")
    return X


def is_fillable(D: GraphLike, X: Iterable[str]) -> bool:
    F = as_subset(D)
    X = _check_vertex_set(F, X)
    need = len(in_edges(F, X))
    if not need:
        return True
    net, sink = sink_net(F, X)
    return net.max_flow(net.new_flow(), F.graph.vindex[F.root], sink) == need


def fill_closure(D: GraphLike, X: Iterable[str]) -> frozenset:
    """Smallest fillable superset of ``X``."""
    F = as_subset(D)
    X = _check_vertex_set(F, X)
    if not X:
        return X
    g = F.graph
    net, sink = sink_net(F, X)
    flow = net.new_flow()
    net.max_flow(flow, g.vindex[F.root], sink)
    coreach = net.reach(flow, sink, forward=False)
    return X | frozenset(v for v in g.vertices if coreach[g.vindex[v]])


def _full_witness_flow(F, v):
    g = F.graph
    if v not in g.vindex:
        raise GraphError(f"unknown vertex {v!r}")
    if v == g.root:
        raise PreconditionError("v must not be the root")
    need = len(in_edges(F, [v]))
    net = plain_net(F)
    flow = net.new_flow()
    s = g.vindex[g.root]
    if net.max_flow(flow, s, g.vindex[v]) != need:
        raise PreconditionError(f"the ingoing edges of {v!r} cannot all be covered")
    return net, flow, need


def is_tight(F: GraphLike, v: str, T: Iterable[str]) -> bool:
    F = as_subset(F)
    T = _check_vertex_set(F, T)
    if v not in T:
        raise PreconditionError(f"{v!r} must belong to T")
    _, _, need = _full_witness_flow(F, v)
    return len(in_edges(F, T)) == need


def largest_tight_set(F: GraphLike, v: str) -> TightResult:
    F = as_subset(F)
    g = F.graph
    net, flow, _ = _full_witness_flow(F, v)
    seen = net.reach(flow, g.vindex[g.root])
    T = frozenset(x for x in g.vertices if not seen[g.vindex[x]])
    return TightResult(v, T, in_edges(F, T))


def witness_family(D: GraphLike) -> dict[str, Path]:
    """Map every edge to a root path ending in it, edge-disjoint per head vertex."""
    F = as_subset(D)
    family: dict[str, Path] = {}
    for v in F.graph.non_root:
        system = max_path_system(F, v)
        if len(system) != len(in_edges(F, [v])):
            raise PreconditionError(f"not a flame: {v!r} has uncovered ingoing edges")
        family.update(system.by_last_edge())
    return family
