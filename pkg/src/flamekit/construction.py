"""Growing flames one edge at a time.

``build_order`` realises the finite case of the single-edge construction:
fix one witness path per edge of the target flame, then keep inserting the
precedence-least missing edge, first adding helper edges taken from the
witness paths whenever the edge itself would break the flame property.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .analysis import is_flame, largest_tight_set, witness_family
from .digraph import EdgeSubset, GraphLike, RootedDigraph, as_subset, in_edges
from .errors import GraphError, InvariantError, PreconditionError
from .pathflow import Path, local_connectivity


def _rank(graph: RootedDigraph, precedence: Optional[Sequence[str]]) -> Callable[[str], int]:
    """Key function for a precedence list; unlisted edges follow in canonical order."""
    order = list(precedence or ())
    unknown = [e for e in order if e not in graph.edges]
    if unknown:
        raise GraphError(f"precedence names unknown edge {unknown[0]!r}")
    seen = set(order)
    order += [e for e in graph.edge_ids if e not in seen]
    pos = {e: i for i, e in enumerate(order)}
    return pos.__getitem__


def _host_subset(F: GraphLike) -> EdgeSubset:
    if isinstance(F, RootedDigraph):
        raise TypeError("expected an EdgeSubset of the host digraph")
    return as_subset(F)


def _check_fresh(F: EdgeSubset, e: str) -> None:
    if e not in F.graph.edges:
        raise GraphError(f"unknown edge {e!r}")
    if e in F.members:
        raise PreconditionError(f"edge {e!r} is already present")


def _insertable(F: EdgeSubset, e: str) -> bool:
    edge = F.graph.edges[e]
    if edge.tail == F.root:
        return True
    return edge.tail not in largest_tight_set(F, edge.head).tight_set


def can_insert(F: EdgeSubset, e: str) -> bool:
    """Whether ``F + e`` is again a flame, decided by the tight set of the head of ``e``."""
    F = _host_subset(F)
    _check_fresh(F, e)
    if not is_flame(F):
        raise PreconditionError("F is not a flame")
    return _insertable(F, e)


def insert_entering(F: EdgeSubset, e: str, v: Optional[str] = None) -> EdgeSubset:
    """Add ``e`` where it enters the largest ``v``-tight set of ``F`` (``v`` defaults to its head)."""
    F = _host_subset(F)
    _check_fresh(F, e)
    edge = F.graph.edges[e]
    v = edge.head if v is None else v
    T = largest_tight_set(F, v).tight_set
    if not (edge.head in T and edge.tail not in T):
        raise PreconditionError(f"edge {e!r} does not enter the largest {v}-tight set")
    grown = F.with_edge(e)
    if not is_flame(grown):
        raise InvariantError(f"adding {e!r} across a tight cut broke the flame property")
    return grown


@dataclass(frozen=True)
class HelperStep:
    target: str
    measure: int
    pool: frozenset
    chosen: str


def insert_with_helpers(
    F: EdgeSubset,
    e: str,
    witnesses: Mapping[str, Path],
    precedence: Optional[Sequence[str]] = None,
    trace: Optional[list] = None,
) -> list[str]:
    """Edges to add, ending with ``e``, so that every intermediate set is a flame.

    ``witnesses`` is a witness family of the host. Helpers come from the
    witness paths of ``e`` and of the ingoing edges of its head whose paths
    are not yet inside ``F``; the number of such path edges still missing
    must drop at every step. Steps are appended to ``trace`` if given.
    """
    F = _host_subset(F)
    _check_fresh(F, e)
    if not is_flame(F):
        raise PreconditionError("F is not a flame")
    return _insert_with_helpers(F, e, witnesses, _rank(F.graph, precedence), trace)[0]


def _insert_with_helpers(F, e, witnesses, rank, trace):
    g = F.graph
    v = g.edges[e].head
    seq: list[str] = []
    last = None
    while True:
        members = F.members
        pending = {e} | {f for f in in_edges(F, [v]) if not members.issuperset(witnesses[f].edges)}
        pool = frozenset(x for f in pending for x in witnesses[f].edges) - members
        if last is not None and len(pool) >= last:
            raise InvariantError(f"helper measure did not decrease ({last} -> {len(pool)})")
        last = len(pool)
        if _insertable(F, e):
            if trace is not None:
                trace.append(HelperStep(e, len(pool), pool, e))
            F = F.with_edge(e)
            if not is_flame(F):
                raise InvariantError(f"inserting {e!r} broke the flame property")
            seq.append(e)
            return seq, F
        T = largest_tight_set(F, v).tight_set
        entering = [x for x in pool if g.edges[x].head in T and g.edges[x].tail not in T]
        if not entering:
            raise InvariantError(f"no witness edge enters the {v}-tight set while adding {e!r}")
        helper = min(entering, key=rank)
        if trace is not None:
            trace.append(HelperStep(e, len(pool), pool, helper))
        F = insert_entering(F, helper, v)
        seq.append(helper)


@dataclass(frozen=True)
class BuildOrder:
    order: tuple[str, ...]
    provenance: tuple[str, ...]

    def lines(self) -> list[str]:
        return [f"{e} {p}" for e, p in zip(self.order, self.provenance)]


def build_order(
    D: GraphLike,
    precedence: Optional[Sequence[str]] = None,
    trace: Optional[list] = None,
) -> BuildOrder:
    """Order the edges of the flame ``D`` so that every prefix is a flame."""
    full = as_subset(D)
    if not is_flame(full):
        raise PreconditionError("input is not a flame")
    g = full.graph
    witnesses = witness_family(full)
    rank = _rank(g, precedence)
    F = EdgeSubset(g, frozenset())
    order: list[str] = []
    roles: list[str] = []
    for e in sorted(full.members, key=rank):
        if e in F.members:
            continue
        steps, F = _insert_with_helpers(F, e, witnesses, rank, trace)
        order += steps
        roles += ["helper"] * (len(steps) - 1) + ["target"]
    if sorted(order) != sorted(full.members):
        raise InvariantError("build order is not a permutation of the edge set")
    return BuildOrder(tuple(order), tuple(roles))


def extract_minimal_preserver(D: GraphLike, deletion_order: Optional[Sequence[str]] = None) -> EdgeSubset:
    """Greedy reverse deletion keeping every root connectivity intact.

    The result is edge-minimal, hence a flame in which every vertex has
    indegree equal to its connectivity in ``D``; both facts are asserted.
    """
    full = as_subset(D)
    g = full.graph
    targets = {v: local_connectivity(full, v) for v in g.non_root}
    rank = _rank(g, deletion_order)
    current = full
    for e in sorted(full.members, key=rank):
        trial = current.without(e)
        if all(local_connectivity(trial, v) == lam for v, lam in targets.items()):
            current = trial
    for v, lam in targets.items():
        if len(in_edges(current, [v])) != lam:
            raise InvariantError(f"minimal preserver has indegree != connectivity at {v!r}")
    if not is_flame(current):
        raise InvariantError("minimal preserver is not a flame")
    return current


# -- layered chains ---------------------------------------------------------

@dataclass
class LayerVerdict:
    index: int
    flame: bool
    connectivity: bool
    branching: bool
    spanning_arborescence: Optional[bool]
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.flame and self.connectivity and self.branching and self.spanning_arborescence is not False


@dataclass
class ChainVerdict:
    layers: list[LayerVerdict]
    max_connectivity: int
    min_connectivity: int

    @property
    def ok(self) -> bool:
        return all(layer.ok for layer in self.layers)

    @property
    def complete(self) -> bool:
        return len(self.layers) == self.max_connectivity


def _branching(g: RootedDigraph, edges: Iterable[str]) -> tuple[bool, set]:
    """(is it a branching, vertices reachable from the root inside it)."""
    edges = list(edges)
    parent: dict[str, str] = {}
    for e in edges:
        head = g.edges[e].head
        if head in parent:
            return False, set()
        parent[head] = g.edges[e].tail
    for start in parent:
        x, steps = start, 0
        while x in parent:
            x = parent[x]
            steps += 1
            if x == start or steps > len(parent):
                return False, set()
    reached = {g.root}
    children: dict[str, list[str]] = {}
    for head, tail in parent.items():
        children.setdefault(tail, []).append(head)
    stack = [g.root]
    while stack:
        for y in children.get(stack.pop(), ()):
            reached.add(y)
            stack.append(y)
    return True, reached


def verify_layered_chain(D: GraphLike, chain: Sequence[Iterable[str]]) -> ChainVerdict:
    """Check an ascending chain F_1 ⊆ ... ⊆ F_m layer by layer.

    Each F_i must be a flame whose root connectivities are those of ``D``
    capped at ``i``, and F_i - F_(i-1) must be a branching; up to the
    smallest connectivity of ``D`` it must even be a spanning arborescence.
    """
    full = as_subset(D)
    g = full.graph
    lam = {v: local_connectivity(full, v) for v in g.non_root}
    m = max(lam.values(), default=0)
    k = min(lam.values(), default=0)
    layers = [EdgeSubset(g, frozenset(layer)) for layer in chain]
    prev = EdgeSubset(g, frozenset())
    for i, F in enumerate(layers, 1):
        if not F.members <= full.members:
            raise PreconditionError(f"layer {i} is not contained in the digraph")
        if not prev.members <= F.members:
            raise PreconditionError(f"chain is not ascending at layer {i}")
        prev = F
    verdicts = []
    prev = EdgeSubset(g, frozenset())
    for i, F in enumerate(layers, 1):
        problems = []
        flame = is_flame(F)
        if not flame:
            problems.append("not a flame")
        bad = [v for v in g.non_root if local_connectivity(F, v) != min(lam[v], i)]
        if bad:
            problems.append("connectivity differs at " + " ".join(bad))
        branching, reached = _branching(g, F.members - prev.members)
        if not branching:
            problems.append("difference is not a branching")
        spanning = None
        if i <= k:
            spanning = branching and len(reached) == len(g.vertices)
            if not spanning:
                problems.append("difference is not a spanning arborescence")
        verdicts.append(LayerVerdict(i, flame, not bad, branching, spanning, problems))
        prev = F
    return ChainVerdict(verdicts, m, k)
