"""Weighted baseline centralities: degree, eigenvector, betweenness,
closeness, Laplacian and Burt's network constraint."""

from __future__ import annotations

import enum
import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .graph import WeightedGraph

__all__ = [
    "CentralityVector",
    "ConvergenceError",
    "DistanceConvention",
    "degree_centrality",
    "eigenvector_centrality",
    "betweenness_centrality",
    "closeness_centrality",
    "laplacian_centrality",
    "network_constraint",
    "laplacian_energy",
]

# Relative slack under which two path lengths count as equal.
PATH_TIE_RTOL = 1e-12
# Sources per work unit for BC/CC; fixed so results never depend on thread count.
SOURCE_CHUNK = 64


class ConvergenceError(RuntimeError):
    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(f"power iteration did not converge after {iterations} iterations (residual {residual:.3g})")


class DistanceConvention(str, enum.Enum):
    """How a tie strength becomes a path length."""

    RECIPROCAL = "reciprocal"
    DIRECT = "direct"


@dataclass(frozen=True, eq=False)
class CentralityVector:
    measure: str
    labels: tuple[str, ...]
    values: np.ndarray
    higher_is_better: bool = True

    def __len__(self):
        return len(self.values)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.values.tolist()))


def degree_centrality(g: WeightedGraph, weighted: bool = True) -> CentralityVector:
    """Node strength, or plain neighbor count with ``weighted=False``."""
    if weighted:
        return CentralityVector("dc", g.labels, g.strength())
    return CentralityVector("dc", g.labels, g.degree().astype(np.float64))


def _adjacency_matrix(g: WeightedGraph) -> sp.csr_matrix:
    return sp.csr_matrix((g.weights, g.indices, g.indptr), shape=(g.n, g.n))


def eigenvector_centrality(g: WeightedGraph, tol: float = 1e-10, max_iters: int = 10000) -> CentralityVector:
    """Principal eigenvector of the weighted adjacency, scaled to unit maximum.

    Power iteration runs on ``A + I`` from a uniform start.  The shift leaves
    the eigenvectors unchanged but stops the sign oscillation that plain
    iteration shows on bipartite graphs.  Iteration stops once successive
    iterates differ by less than ``tol`` in max-norm.
    """
    if g.m == 0:
        return CentralityVector("ec", g.labels, np.zeros(g.n))
    a = _adjacency_matrix(g)
    x = np.ones(g.n)
    diff = np.inf
    for it in range(1, max_iters + 1):
        y = a @ x + x
        y /= y.max()
        diff = float(np.max(np.abs(y - x)))
        x = y
        if diff < tol:
            return CentralityVector("ec", g.labels, x)
    raise ConvergenceError(max_iters, diff)


def _lengths(g: WeightedGraph, conv) -> np.ndarray:
    conv = DistanceConvention(conv)
    if conv is DistanceConvention.RECIPROCAL:
        return 1.0 / g.weights
    return g.weights.astype(np.float64)


def _dijkstra(ptr, ind, length, s):
    """Single-source shortest paths with path counting.

    Returns settle order, distances, path counts and predecessor lists.
    """
    dist = {s: 0.0}
    sigma = {s: 1.0}
    preds = {s: []}
    order = []
    done = set()
    heap = [(0.0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        order.append(u)
        su = sigma[u]
        for k in range(ptr[u], ptr[u + 1]):
            v = ind[k]
            if v in done:
                continue
            alt = d + length[k]
            cur = dist.get(v)
            if cur is None or alt < cur - PATH_TIE_RTOL * cur:
                dist[v] = alt
                sigma[v] = su
                preds[v] = [u]
                heapq.heappush(heap, (alt, v))
            elif alt <= cur + PATH_TIE_RTOL * cur:
                sigma[v] += su
                preds[v].append(u)
    return order, dist, sigma, preds


def _chunked(n, fn, threads):
    chunks = [range(lo, min(lo + SOURCE_CHUNK, n)) for lo in range(0, n, SOURCE_CHUNK)]
    if threads is None or threads <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, chunks))


def betweenness_centrality(g: WeightedGraph, conv=DistanceConvention.RECIPROCAL, threads: int = 1) -> CentralityVector:
    """Brandes betweenness over weighted shortest paths.

    Endpoints are excluded and each unordered pair counts once, so the
    middle of a three-node path scores 1.  Partial sums are reduced in a
    fixed source order regardless of ``threads``.
    """
    ptr = g.indptr.tolist()
    ind = g.indices.tolist()
    length = _lengths(g, conv).tolist()

    def work(sources):
        part = np.zeros(g.n)
        for s in sources:
            order, _, sigma, preds = _dijkstra(ptr, ind, length, s)
            delta = dict.fromkeys(order, 0.0)
            for w in reversed(order):
                coeff = (1.0 + delta[w]) / sigma[w]
                for v in preds[w]:
                    delta[v] += sigma[v] * coeff
                if w != s:
                    part[w] += delta[w]
        return part

    bc = np.zeros(g.n)
    for part in _chunked(g.n, work, threads):
        bc += part
    return CentralityVector("bc", g.labels, bc / 2.0)


def closeness_centrality(g: WeightedGraph, conv=DistanceConvention.RECIPROCAL, threads: int = 1) -> CentralityVector:
    """Reachable count over total distance, within each node's component.

    Isolated nodes score 0.
    """
    ptr = g.indptr.tolist()
    ind = g.indices.tolist()
    length = _lengths(g, conv).tolist()

    def work(sources):
        out = []
        for s in sources:
            _, dist, _, _ = _dijkstra(ptr, ind, length, s)
            total = sum(dist.values())
            out.append((len(dist) - 1) / total if total > 0 else 0.0)
        return out

    cc = np.array([v for part in _chunked(g.n, work, threads) for v in part], dtype=np.float64)
    return CentralityVector("cc", g.labels, cc)


def laplacian_energy(g: WeightedGraph) -> float:
    """Sum of squared strengths plus twice the sum of squared edge weights."""
    x = g.strength()
    return float(np.sum(x * x) + 2.0 * np.sum(g.edge_weight**2))


def laplacian_centrality(g: WeightedGraph) -> CentralityVector:
    """Drop in Laplacian energy when a node is deleted, in closed form."""
    x = g.strength()
    rows = np.repeat(np.arange(g.n), g.degree())
    w = g.weights
    xu = x[g.indices]
    per_slot = (2.0 * xu * w - w * w) + 2.0 * w * w
    lc = x * x + np.bincount(rows, weights=per_slot, minlength=g.n)
    return CentralityVector("lc", g.labels, lc)


def network_constraint(g: WeightedGraph) -> CentralityVector:
    """Burt's aggregate constraint; lower means more brokerage.

    Nodes without ties get ``inf`` so they rank last.
    """
    omega = g.strength()
    ptr = g.indptr.tolist()
    ind = g.indices.tolist()
    wts = g.weights.tolist()
    prop = []
    for i in range(g.n):
        if omega[i] > 0:
            prop.append({ind[k]: wts[k] / omega[i] for k in range(ptr[i], ptr[i + 1])})
        else:
            prop.append({})
    out = np.empty(g.n)
    for i in range(g.n):
        pi = prop[i]
        if not pi:
            out[i] = np.inf
            continue
        indirect = dict.fromkeys(pi, 0.0)
        for q, p_iq in pi.items():
            for j, p_qj in prop[q].items():
                if j != i and j in indirect:
                    indirect[j] += p_iq * p_qj
        out[i] = sum((pi[j] + indirect[j]) ** 2 for j in sorted(pi))
    return CentralityVector("nc", g.labels, out, higher_is_better=False)
