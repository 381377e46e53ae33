"""Pure-Python truss kernels; used when the compiled extension is unavailable.

Same contract and the same (support, edge id) removal order as the
compiled module.
"""

from __future__ import annotations

import heapq

import numpy as np


def _adjacency(indptr, indices, slot_edge):
    # per-node {neighbor: edge id}
    ind = indices.tolist()
    eid = slot_edge.tolist()
    ptr = indptr.tolist()
    return [dict(zip(ind[ptr[i] : ptr[i + 1]], eid[ptr[i] : ptr[i + 1]])) for i in range(len(ptr) - 1)]


def edge_support(indptr, indices, edge_src, edge_dst):
    """Number of triangles through every edge."""
    ptr = indptr.tolist()
    ind = indices.tolist()
    sets = [set(ind[ptr[i] : ptr[i + 1]]) for i in range(len(ptr) - 1)]
    out = [len(sets[u] & sets[v]) for u, v in zip(edge_src.tolist(), edge_dst.tolist())]
    return np.array(out, dtype=np.int64)


def truss_peel(indptr, indices, slot_edge, edge_src, edge_dst, support):
    """Edge trussness by min-support peeling."""
    adj = _adjacency(indptr, indices, slot_edge)
    src = edge_src.tolist()
    dst = edge_dst.tolist()
    sup = [int(x) for x in support]
    m = len(sup)
    truss = [0] * m
    removed = [False] * m
    heap = [(s, e) for e, s in enumerate(sup)]
    heapq.heapify(heap)
    while heap:
        s, e = heapq.heappop(heap)
        if removed[e] or s != sup[e]:
            continue
        truss[e] = s + 2
        a, b = src[e], dst[e]
        if len(adj[a]) > len(adj[b]):
            a, b = b, a
        nb = adj[b]
        for w, f1 in adj[a].items():
            if w == b or removed[f1]:
                continue
            f2 = nb.get(w)
            if f2 is None or removed[f2]:
                continue
            for f in (f1, f2):
                if sup[f] > s:
                    sup[f] -= 1
                    heapq.heappush(heap, (sup[f], f))
        removed[e] = True
    return np.array(truss, dtype=np.int64)
