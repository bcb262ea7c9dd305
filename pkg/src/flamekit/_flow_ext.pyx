# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_flow_py``; identical semantics and tie-breaking."""
from libc.stdlib cimport malloc, free


cpdef int augment(int n, const int[:] ptr, const int[:] edge, const int[:] other,
                  const unsigned char[:] out, unsigned char[:] flow, int s, int t):
    cdef int *pred_slot = <int *> malloc(n * sizeof(int))
    cdef int *pred_vertex = <int *> malloc(n * sizeof(int))
    cdef int *queue = <int *> malloc(n * sizeof(int))
    cdef unsigned char *seen = <unsigned char *> malloc(n)
    cdef int head = 0, tail = 0, x, y, k, i, found = 0
    if not pred_slot or not pred_vertex or not queue or not seen:
        free(pred_slot); free(pred_vertex); free(queue); free(seen)
        raise MemoryError()
    for i in range(n):
        seen[i] = 0
    seen[s] = 1
    queue[tail] = s
    tail += 1
    while head < tail and not found:
        x = queue[head]
        head += 1
        for k in range(ptr[x], ptr[x + 1]):
            y = other[k]
            if seen[y] or out[k] == flow[edge[k]]:
                continue
            seen[y] = 1
            pred_slot[y] = k
            pred_vertex[y] = x
            if y == t:
                found = 1
                break
            queue[tail] = y
            tail += 1
    if found:
        y = t
        while y != s:
            flow[edge[pred_slot[y]]] ^= 1
            y = pred_vertex[y]
    free(pred_slot); free(pred_vertex); free(queue); free(seen)
    return found


cpdef int max_flow(int n, const int[:] ptr, const int[:] edge, const int[:] other,
                   const unsigned char[:] out, unsigned char[:] flow, int s, int t):
    cdef int count = 0
    while augment(n, ptr, edge, other, out, flow, s, t):
        count += 1
    return count


cpdef bytearray reach(int n, const int[:] ptr, const int[:] edge, const int[:] other,
                      const unsigned char[:] out, const unsigned char[:] flow, int s,
                      bint forward):
    cdef bytearray result = bytearray(n)
    cdef unsigned char[:] seen = result
    cdef int *stack = <int *> malloc((n + 1) * sizeof(int))
    cdef int top = 0, x, y, k
    cdef int want = 1 if forward else 0
    if not stack:
        raise MemoryError()
    seen[s] = 1
    stack[top] = s
    top += 1
    while top:
        top -= 1
        x = stack[top]
        for k in range(ptr[x], ptr[x + 1]):
            y = other[k]
            if seen[y] or (out[k] != flow[edge[k]]) != want:
                continue
            seen[y] = 1
            stack[top] = y
            top += 1
    free(stack)
    return result
