# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled truss kernels over CSR adjacency.

Mirrors :mod:`socialcentrality._truss_py` exactly; both are selected by
:mod:`socialcentrality._backend`.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t
from libcpp.pair cimport pair
from libcpp.queue cimport priority_queue

cnp.import_array()


cdef inline int64_t _find(const int64_t[::1] indices, int64_t lo, int64_t hi,
                          int64_t x) noexcept nogil:
    # slot of x inside the sorted run indices[lo:hi], or -1
    cdef int64_t end = hi, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if indices[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    if lo < end and indices[lo] == x:
        return lo
    return -1


def edge_support(const int64_t[::1] indptr, const int64_t[::1] indices,
                 const int64_t[::1] edge_src, const int64_t[::1] edge_dst):
    """Number of triangles through every edge."""
    cdef Py_ssize_t m = edge_src.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] sup = out
    cdef int64_t e, a, b, t, s, w, cnt, blo, bhi
    with nogil:
        for e in range(m):
            a = edge_src[e]
            b = edge_dst[e]
            if indptr[a + 1] - indptr[a] > indptr[b + 1] - indptr[b]:
                t = a; a = b; b = t
            blo = indptr[b]
            bhi = indptr[b + 1]
            cnt = 0
            for s in range(indptr[a], indptr[a + 1]):
                w = indices[s]
                if w == b:
                    continue
                if _find(indices, blo, bhi, w) >= 0:
                    cnt += 1
            sup[e] = cnt
    return out


def truss_peel(const int64_t[::1] indptr, const int64_t[::1] indices,
               const int64_t[::1] slot_edge, const int64_t[::1] edge_src,
               const int64_t[::1] edge_dst, support):
    """Edge trussness by min-support peeling.

    Edges leave in ascending (support, edge id) order; removing an edge of
    support ``s`` decrements every surviving triangle partner whose support
    exceeds ``s``.  The removed edge gets trussness ``s + 2``.
    """
    cdef Py_ssize_t m = edge_src.shape[0]
    cdef cnp.ndarray[int64_t, ndim=1] sup_arr = np.array(support, dtype=np.int64, copy=True)
    cdef int64_t[::1] sup = sup_arr
    cdef cnp.ndarray[int64_t, ndim=1] out = np.zeros(m, dtype=np.int64)
    cdef int64_t[::1] truss = out
    cdef cnp.ndarray[uint8_t, ndim=1] removed_arr = np.zeros(m, dtype=np.uint8)
    cdef uint8_t[::1] removed = removed_arr
    # max-heap on negated keys pops the smallest (support, edge id) first
    cdef priority_queue[pair[int64_t, int64_t]] heap
    cdef pair[int64_t, int64_t] top
    cdef int64_t e, s, a, b, t, slot, w, f1, f2, pos, blo, bhi
    with nogil:
        for e in range(m):
            heap.push(pair[int64_t, int64_t](-sup[e], -e))
        while not heap.empty():
            top = heap.top()
            heap.pop()
            s = -top.first
            e = -top.second
            if removed[e] or s != sup[e]:
                continue
            truss[e] = s + 2
            a = edge_src[e]
            b = edge_dst[e]
            if indptr[a + 1] - indptr[a] > indptr[b + 1] - indptr[b]:
                t = a; a = b; b = t
            blo = indptr[b]
            bhi = indptr[b + 1]
            for slot in range(indptr[a], indptr[a + 1]):
                w = indices[slot]
                if w == b:
                    continue
                f1 = slot_edge[slot]
                if removed[f1]:
                    continue
                pos = _find(indices, blo, bhi, w)
                if pos < 0:
                    continue
                f2 = slot_edge[pos]
                if removed[f2]:
                    continue
                if sup[f1] > s:
                    sup[f1] -= 1
                    heap.push(pair[int64_t, int64_t](-sup[f1], -f1))
                if sup[f2] > s:
                    sup[f2] -= 1
                    heap.push(pair[int64_t, int64_t](-sup[f2], -f2))
            removed[e] = 1
    return out
