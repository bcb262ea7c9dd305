"""Exhaustive reference implementations for tiny digraphs.

Nothing here touches the flow kernel. Paths are enumerated by depth-first
search and path systems by backtracking, straight from the definitions.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Iterator

from .digraph import Edge, EdgeSubset, GraphLike, RootedDigraph, as_subset, in_edges
from .errors import BudgetExceeded, PreconditionError


@dataclass(frozen=True)
class OracleBudget:
    max_vertices: int = 6
    max_edges: int = 8

    def check(self, F: EdgeSubset) -> None:
        if len(F.graph.vertices) > self.max_vertices or len(F.members) > self.max_edges:
            raise BudgetExceeded(
                f"oracle budget is {self.max_vertices} vertices / {self.max_edges} edges"
            )


DEFAULT_BUDGET = OracleBudget()


def _prepare(D: GraphLike, budget: OracleBudget) -> EdgeSubset:
    F = as_subset(D)
    budget.check(F)
    return F


def entering_paths(F: EdgeSubset, X: Iterable[str]) -> list[tuple[str, ...]]:
    """All rX-paths: simple, from the root, first touching ``X`` at their last vertex."""
    X = frozenset(X)
    g = F.graph
    out_of: dict[str, list[str]] = {}
    for e in F.ordered():
        out_of.setdefault(g.edges[e].tail, []).append(e)
    found: list[tuple[str, ...]] = []

    def walk(x: str, visited: set, edges: list):
        for e in out_of.get(x, ()):
            y = g.edges[e].head
            if y in visited:
                continue
            if y in X:
                found.append(tuple(edges + [e]))
            else:
                visited.add(y)
                walk(y, visited, edges + [e])
                visited.discard(y)

    if g.root not in X:
        walk(g.root, {g.root}, [])
    return found


def _assignments(F: EdgeSubset, X, required) -> Iterator[dict]:
    """Every edge-disjoint choice of an rX-path ending in each required edge."""
    by_last: dict[str, list] = {}
    for p in entering_paths(F, X):
        by_last.setdefault(p[-1], []).append(p)
    required = sorted(required)

    def rec(i: int, used: frozenset, chosen: dict):
        if i == len(required):
            yield dict(chosen)
            return
        e = required[i]
        for p in by_last.get(e, ()):
            if used.isdisjoint(p):
                chosen[e] = p
                yield from rec(i + 1, used | frozenset(p), chosen)
                del chosen[e]

    yield from rec(0, frozenset(), {})


def all_path_systems(D: GraphLike, v: str, budget: OracleBudget = DEFAULT_BUDGET) -> list[tuple]:
    """Every set of pairwise edge-disjoint root-to-``v`` paths, including the empty one."""
    F = _prepare(D, budget)
    paths = entering_paths(F, {v})
    systems: list[tuple] = []

    def rec(start: int, used: frozenset, chosen: list):
        systems.append(tuple(chosen))
        for j in range(start, len(paths)):
            if used.isdisjoint(paths[j]):
                chosen.append(paths[j])
                rec(j + 1, used | frozenset(paths[j]), chosen)
                chosen.pop()

    rec(0, frozenset(), [])
    return systems


def oracle_lambda(D: GraphLike, v: str, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    return max(len(s) for s in all_path_systems(D, v, budget))


def full_witnesses(D: GraphLike, v: str, budget: OracleBudget = DEFAULT_BUDGET) -> list[dict]:
    F = _prepare(D, budget)
    return list(_assignments(F, {v}, in_edges(F, [v])))


def oracle_is_fillable(D: GraphLike, X, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    F = _prepare(D, budget)
    return next(_assignments(F, X, in_edges(F, X)), None) is not None


def oracle_is_flame(D: GraphLike, budget: OracleBudget = DEFAULT_BUDGET) -> bool:
    F = _prepare(D, budget)
    return all(oracle_is_fillable(F, {v}, budget) for v in F.graph.non_root)


def _subsets(items) -> Iterator[frozenset]:
    items = list(items)
    for k in range(len(items) + 1):
        for combo in combinations(items, k):
            yield frozenset(combo)


def oracle_fill(D: GraphLike, X, budget: OracleBudget = DEFAULT_BUDGET) -> frozenset:
    F = _prepare(D, budget)
    X = frozenset(X)
    rest = [v for v in F.graph.non_root if v not in X]
    result = frozenset(F.graph.non_root)
    for extra in _subsets(rest):
        if oracle_is_fillable(F, X | extra, budget):
            result &= X | extra
    return result


def is_strict_transversal(cut, paths) -> bool:
    """``cut`` holds exactly one edge of each path and nothing else."""
    cut = frozenset(cut)
    covered = set()
    for p in paths:
        hits = cut.intersection(p)
        if len(hits) != 1:
            return False
        covered |= hits
    return covered == cut


def oracle_tight_sets(D: GraphLike, v: str, budget: OracleBudget = DEFAULT_BUDGET) -> list[frozenset]:
    F = _prepare(D, budget)
    witnesses = full_witnesses(F, v, budget)
    if not witnesses:
        raise PreconditionError(f"the ingoing edges of {v!r} cannot all be covered")
    others = [x for x in F.graph.non_root if x != v]
    tight = []
    for extra in _subsets(others):
        T = extra | {v}
        cut = in_edges(F, T)
        if all(is_strict_transversal(cut, w.values()) for w in witnesses):
            tight.append(T)
    return tight


def small_digraphs(max_vertices: int = 4, max_edges: int = 5) -> Iterator:
    """Every rooted multidigraph up to the given size, up to edge relabelling.

    Vertices are ``r, a, b, ...``; edges are multisets over the allowed
    (tail, head) slots, numbered ``e1, e2, ...`` in slot order.
    """
    names = ["r"] + [chr(ord("a") + i) for i in range(max_vertices - 1)]
    for n in range(1, max_vertices + 1):
        verts = names[:n]
        slots = [(t, h) for t in verts for h in verts[1:] if t != h]
        for m in range(max_edges + 1):
            if m and not slots:
                break
            for combo in combinations_with_replacement(slots, m):
                edges = [Edge(f"e{i}", t, h) for i, (t, h) in enumerate(combo, 1)]
                yield RootedDigraph(verts, "r", edges)
