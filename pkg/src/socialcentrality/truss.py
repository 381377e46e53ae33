"""k-truss decomposition, node trussness, hierarchy levels and tie classes."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .graph import WeightedGraph

__all__ = [
    "TrussDecomposition",
    "HierarchyPartition",
    "edge_support",
    "k_truss_decompose",
    "hierarchy_levels",
    "is_intra_community",
    "intra_community_mask",
]


def _kernels(backend):
    if backend is None:
        return _backend.kernels
    found = _backend.available_backends()
    if backend not in found:
        raise ValueError(f"backend {backend!r} not available (have {sorted(found)})")
    return found[backend]


@dataclass(frozen=True, eq=False)
class TrussDecomposition:
    """Edge trussness indexed by edge id, node trussness indexed by node id.

    Nodes without edges carry trussness 0.
    """

    graph: WeightedGraph
    edge_truss: np.ndarray
    node_truss: np.ndarray
    max_level: int
    timings: dict = field(default_factory=dict, repr=False)

    def edge_trussness(self, i: int, j: int) -> int:
        e = self.graph.edge_id(i, j)
        if e < 0:
            raise KeyError(f"no edge between {i} and {j}")
        return int(self.edge_truss[e])

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {
            (u, v): t
            for u, v, t in zip(self.graph.edge_src.tolist(), self.graph.edge_dst.tolist(), self.edge_truss.tolist())
        }


@dataclass(frozen=True)
class HierarchyPartition:
    """``levels`` holds ``(level value, node ids)`` in ascending level order."""

    levels: tuple[tuple[int, tuple[int, ...]], ...]

    def level_of(self) -> dict[int, int]:
        return {v: xi for xi, nodes in self.levels for v in nodes}


def edge_support(g: WeightedGraph, backend: str | None = None) -> np.ndarray:
    """Triangle count of every edge, ``|N_i ∩ N_j|``, indexed by edge id."""
    k = _kernels(backend)
    return k.edge_support(g.indptr, g.indices, g.edge_src, g.edge_dst)


def node_trussness(g: WeightedGraph, edge_truss: np.ndarray) -> np.ndarray:
    tau = np.zeros(g.n, dtype=np.int64)
    np.maximum.at(tau, g.edge_src, edge_truss)
    np.maximum.at(tau, g.edge_dst, edge_truss)
    return tau


def k_truss_decompose(g: WeightedGraph, backend: str | None = None) -> TrussDecomposition:
    """Decompose ``g`` into its truss hierarchy.

    Weights play no part: only the triangle structure matters.  ``backend``
    picks a kernel implementation (``"cython"`` or ``"python"``); the default
    is whatever :mod:`socialcentrality._backend` selected at import.
    """
    k = _kernels(backend)
    t0 = time.perf_counter()
    sup = k.edge_support(g.indptr, g.indices, g.edge_src, g.edge_dst)
    t1 = time.perf_counter()
    et = k.truss_peel(g.indptr, g.indices, g.slot_edge, g.edge_src, g.edge_dst, sup)
    t2 = time.perf_counter()
    del sup
    tau = node_trussness(g, et)
    et.setflags(write=False)
    tau.setflags(write=False)
    top = int(et.max()) if g.m else 0
    return TrussDecomposition(g, et, tau, top, {"support": t1 - t0, "peel": t2 - t1})


def hierarchy_levels(d: TrussDecomposition) -> HierarchyPartition:
    tau = d.node_truss
    levels = []
    for xi in np.unique(tau).tolist():
        levels.append((int(xi), tuple(np.flatnonzero(tau == xi).tolist())))
    return HierarchyPartition(tuple(levels))


def intra_community_mask(d: TrussDecomposition) -> np.ndarray:
    """Boolean per edge id: both endpoints and the edge share one trussness."""
    g = d.graph
    tu = d.node_truss[g.edge_src]
    tv = d.node_truss[g.edge_dst]
    return (tu == tv) & (tv == d.edge_truss)


def is_intra_community(d: TrussDecomposition, i: int, j: int) -> bool:
    g = d.graph
    if i == j:
        raise ValueError("tie classification needs two distinct nodes")
    e = g.edge_id(i, j)  # range-checks both ids
    if e < 0:
        return False
    t = d.edge_truss[e]
    return bool(d.node_truss[i] == t and d.node_truss[j] == t)
