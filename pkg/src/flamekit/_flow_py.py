"""Pure-Python unit-capacity residual kernel.

Networks are in incidence-CSR form: for vertex ``x`` the slots
``ptr[x]:ptr[x+1]`` list every active edge touching ``x`` in ascending edge
index, with the opposite endpoint in ``other`` and ``out[k] == 1`` when ``x``
is the tail. ``flow`` holds 0/1 per edge index. A slot is a residual arc
leaving ``x`` exactly when ``out[k] != flow[edge[k]]``.
"""
from collections import deque


def augment(n, ptr, edge, other, out, flow, s, t):
    """One breadth-first augmentation from ``s`` to ``t``; returns 1 on success."""
    pred_slot = [-1] * n
    pred_vertex = [-1] * n
    seen = bytearray(n)
    seen[s] = 1
    queue = deque((s,))
    while queue:
        x = queue.popleft()
        for k in range(ptr[x], ptr[x + 1]):
            y = other[k]
            if seen[y] or out[k] == flow[edge[k]]:
                continue
            seen[y] = 1
            pred_slot[y] = k
            pred_vertex[y] = x
            if y == t:
                while y != s:
                    flow[edge[pred_slot[y]]] ^= 1
                    y = pred_vertex[y]
                return 1
            queue.append(y)
    return 0


def max_flow(n, ptr, edge, other, out, flow, s, t):
    """Augment until blocked; returns the number of augmentations performed."""
    count = 0
    while augment(n, ptr, edge, other, out, flow, s, t):
        count += 1
    return count


def reach(n, ptr, edge, other, out, flow, s, forward):
    """Residual reachability mask from ``s`` (``forward``) or towards ``s``."""
    seen = bytearray(n)
    seen[s] = 1
    stack = [s]
    want = 1 if forward else 0
    while stack:
        x = stack.pop()
        for k in range(ptr[x], ptr[x + 1]):
            y = other[k]
            if seen[y] or (out[k] != flow[edge[k]]) != want:
                continue
            seen[y] = 1
            stack.append(y)
    return seen
