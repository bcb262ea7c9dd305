"""Builders that turn edge subsets into kernel networks, and flow peeling."""
from __future__ import annotations

from .digraph import EdgeSubset
from .errors import InvariantError
from .kernel import FlowNet


def plain_net(F: EdgeSubset) -> FlowNet:
    g = F.graph
    return FlowNet(len(g.vertices), g.tails, g.heads, F.active)


def masked_net(F: EdgeSubset, drop: set[str]) -> FlowNet:
    g = F.graph
    active = bytearray(F.active)
    for e in drop:
        active[g.eindex[e]] = 0
    return FlowNet(len(g.vertices), g.tails, g.heads, active)


def sink_net(F: EdgeSubset, X) -> tuple[FlowNet, int]:
    """``X`` merged into a fresh sink vertex; edges leaving ``X`` are dropped.

    Returns the network and the sink index. rX-paths of ``F`` correspond to
    r-sink paths of the result edge for edge.
    """
    g = F.graph
    n = len(g.vertices)
    xs = {g.vindex[x] for x in X}
    heads = [n if h in xs else h for h in g.heads]
    active = bytearray(F.active)
    for i, t in enumerate(g.tails):
        if t in xs:
            active[i] = 0
    return FlowNet(n + 1, g.tails, heads, active), n


def flow_value(net: FlowNet, s: int, t: int) -> tuple[int, bytearray]:
    flow = net.new_flow()
    return net.max_flow(flow, s, t), flow


def peel(tails, heads, edges, s: int, t: int) -> list[list[int]]:
    """Decompose a 0/1 flow (given as its support) into simple s-t paths.

    Walks always take the smallest remaining edge index; closed cycles are
    cut out and discarded.
    """
    outs: dict[int, list[int]] = {}
    for i in sorted(edges, reverse=True):
        outs.setdefault(tails[i], []).append(i)
    paths = []
    while outs.get(s):
        walk: list[int] = []
        verts = [s]
        pos = {s: 0}
        x = s
        while x != t:
            stack = outs.get(x)
            if not stack:
                raise InvariantError("flow conservation violated while peeling paths")
            i = stack.pop()
            y = heads[i]
            if y in pos:
                cut = pos[y]
                for z in verts[cut + 1:]:
                    del pos[z]
                del walk[cut:]
                del verts[cut + 1:]
            else:
                walk.append(i)
                verts.append(y)
                pos[y] = len(walk)
            x = y
        paths.append(walk)
    return paths
