"""Unit-capacity flow networks over dense indices, backed by the fastest kernel available.

The compiled ``_flow_ext`` module is used when it was built; otherwise (or
when ``FLAMEKIT_PURE_PYTHON`` is set) the pure-Python ``_flow_py`` twin is.
"""
from __future__ import annotations

import os
from array import array

from . import _flow_py

BACKEND = "python"
_impl = _flow_py
if not os.environ.get("FLAMEKIT_PURE_PYTHON"):
    try:
        from . import _flow_ext as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        pass


def use_backend(name: str) -> None:
    """Switch kernels at runtime (tests and the benchmark compare both)."""
    global _impl, BACKEND
    if name == "python":
        _impl = _flow_py
    elif name == "cython":
        from . import _flow_ext

        _impl = _flow_ext
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name


class FlowNet:
    """Incidence-CSR network. Loops and inactive edges are left out.

    Edge indices are those of the host graph, so a flow vector can be mapped
    back to edge ids directly.
    """

    __slots__ = ("n", "m", "tails", "heads", "ptr", "edge", "other", "out")

    def __init__(self, n: int, tails, heads, active):
        self.n = n
        self.m = len(tails)
        self.tails = tails
        self.heads = heads
        slots: list[list[tuple[int, int, int]]] = [[] for _ in range(n)]
        for i in range(self.m):
            a, b = tails[i], heads[i]
            if not active[i] or a == b:
                continue
            slots[a].append((i, b, 1))
            slots[b].append((i, a, 0))
        ptr = array("i", [0])
        edge, other, out = array("i"), array("i"), bytearray()
        for row in slots:
            for i, y, o in row:
                edge.append(i)
                other.append(y)
                out.append(o)
            ptr.append(len(edge))
        self.ptr, self.edge, self.other, self.out = ptr, edge, other, bytes(out)

    def new_flow(self) -> bytearray:
        return bytearray(self.m)

    def augment(self, flow: bytearray, s: int, t: int) -> bool:
        return bool(_impl.augment(self.n, self.ptr, self.edge, self.other, self.out, flow, s, t))

    def max_flow(self, flow: bytearray, s: int, t: int) -> int:
        return _impl.max_flow(self.n, self.ptr, self.edge, self.other, self.out, flow, s, t)

    def reach(self, flow: bytearray, s: int, forward: bool = True) -> bytearray:
        """Vertices reachable from ``s`` in the residual (``forward``) or that reach ``s``."""
        return _impl.reach(self.n, self.ptr, self.edge, self.other, self.out, flow, s, forward)
