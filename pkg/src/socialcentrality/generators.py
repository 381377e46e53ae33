"""Synthetic graphs for scalability runs: Erdős–Rényi G(n, m), Watts–Strogatz
and Forest Fire.  All generated edges have weight 1.

Randomness comes from numpy's ``PCG64`` bit generator seeded with
``GeneratorSpec.seed``, so equal specs always yield the same graph.

Forest Fire burning procedure
-----------------------------
Nodes arrive one at a time.  Node ``v`` picks ``ambs`` ambassadors uniformly
(with replacement) among earlier nodes and links to each distinct one.  Every
newly burned node ``u`` then draws ``x`` from a geometric distribution with
mean ``fw / (1 - fw)`` and ``y`` with mean ``b / (1 - b)``, ``b = bw * fw``;
``v`` links to ``x`` random unburned nodes that ``u`` links to and ``y``
random unburned nodes linking to ``u``, which burn in turn (breadth first).
Links are recorded directed and symmetrized at the end.
"""

from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass

import numpy as np

from .graph import WeightedGraph

__all__ = ["GeneratorSpec", "generate", "RNG_ALGORITHM"]

RNG_ALGORITHM = "PCG64"
MODELS = ("er", "ws", "ff")


@dataclass(frozen=True)
class GeneratorSpec:
    model: str
    n: int
    m: int | None = None
    nei: int = 4
    p: float = 0.3
    ambs: int = 4
    fw: float = 0.3
    bw: float = 0.2
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "model", self.model.lower())
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; choose from {', '.join(MODELS)}")
        if self.n < 1:
            raise ValueError("n must be at least 1")
        for name in ("p", "fw", "bw"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.model == "er":
            m = 2 * self.n if self.m is None else self.m
            if m < 0 or m > self.n * (self.n - 1) // 2:
                raise ValueError(f"ER with n={self.n} cannot have m={m} edges")
            object.__setattr__(self, "m", m)
        if self.model == "ws" and self.n > 1 and 2 * self.nei >= self.n:
            raise ValueError("Watts-Strogatz needs n > 2 * nei")
        if self.model == "ff":
            if self.ambs < 1:
                raise ValueError("forest fire needs at least one ambassador")
            if self.fw >= 1.0 or self.bw * self.fw >= 1.0:
                raise ValueError("burning probabilities must be below 1")

    def metadata(self) -> dict:
        meta = {k: v for k, v in asdict(self).items() if v is not None}
        meta["rng"] = RNG_ALGORITHM
        return meta


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _unit_graph(n: int, src: np.ndarray, dst: np.ndarray) -> WeightedGraph:
    lo = np.minimum(src, dst)
    hi = np.maximum(src, dst)
    keep = lo != hi
    key = np.unique(lo[keep] * np.int64(n) + hi[keep])
    return WeightedGraph(n, key // n, key % n, np.ones(len(key)), [str(i) for i in range(n)])


def _erdos_renyi(spec: GeneratorSpec, rng) -> WeightedGraph:
    n, m = spec.n, spec.m
    total = n * (n - 1) // 2
    idx = rng.choice(total, size=m, replace=False) if m else np.zeros(0, dtype=np.int64)
    idx = np.asarray(idx, dtype=np.int64)
    # idx -> (j, i) with j < i in lower-triangle order: idx = i(i-1)/2 + j
    i = ((1 + np.sqrt(1 + 8 * idx.astype(np.float64))) // 2).astype(np.int64)
    i -= (i * (i - 1) // 2) > idx
    i += ((i + 1) * i // 2) <= idx
    j = idx - i * (i - 1) // 2
    return _unit_graph(n, j, i)


def _watts_strogatz(spec: GeneratorSpec, rng) -> WeightedGraph:
    n, nei = spec.n, spec.nei
    if n == 1 or nei == 0:
        return _unit_graph(n, np.zeros(0, np.int64), np.zeros(0, np.int64))
    base = np.arange(n, dtype=np.int64)
    src = np.repeat(base, nei)
    dst = (src + np.tile(np.arange(1, nei + 1, dtype=np.int64), n)) % n
    rewire = np.flatnonzero(rng.random(len(src)) < spec.p)
    targets = rng.integers(0, n, size=len(rewire), dtype=np.int64)
    present = set((np.minimum(src, dst) * n + np.maximum(src, dst)).tolist())
    src_l = src.tolist()
    dst_l = dst.tolist()
    for e, t in zip(rewire.tolist(), targets.tolist()):
        u, v = src_l[e], dst_l[e]
        if t == u:
            continue
        new = min(u, t) * n + max(u, t)
        if new in present:
            continue  # collision: keep the lattice edge
        present.discard(min(u, v) * n + max(u, v))
        present.add(new)
        dst_l[e] = t
    del present
    return _unit_graph(n, src, np.array(dst_l, dtype=np.int64))


def _geometric(rng, p: float) -> int:
    # failures before the first success with success probability 1 - p
    if p <= 0.0:
        return 0
    return int(rng.geometric(1.0 - p)) - 1


def _forest_fire(spec: GeneratorSpec, rng) -> WeightedGraph:
    n = spec.n
    fw = spec.fw
    bw = spec.bw * spec.fw
    out_adj: list[list[int]] = [[] for _ in range(n)]
    in_adj: list[list[int]] = [[] for _ in range(n)]
    src: list[int] = []
    dst: list[int] = []
    mark = [-1] * n  # mark[u] == v  <=>  u already burned while v arrived
    for v in range(1, n):
        mark[v] = v
        queue = deque()
        for a in rng.integers(0, v, size=spec.ambs).tolist():
            if mark[a] != v:
                mark[a] = v
                queue.append(a)
        burned = []
        while queue:
            u = queue.popleft()
            burned.append(u)
            for pool, prob in ((out_adj[u], fw), (in_adj[u], bw)):
                want = _geometric(rng, prob)
                if want == 0:
                    continue
                cand = [w for w in pool if mark[w] != v]
                if not cand:
                    continue
                if want < len(cand):
                    pick = rng.choice(len(cand), size=want, replace=False).tolist()
                    cand = [cand[i] for i in sorted(pick)]
                for w in cand:
                    mark[w] = v
                    queue.append(w)
        for u in burned:
            out_adj[v].append(u)
            in_adj[u].append(v)
            src.append(v)
            dst.append(u)
    return _unit_graph(n, np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64))


def generate(spec: GeneratorSpec) -> WeightedGraph:
    """Generate the graph described by ``spec``; labels are the decimal node ids."""
    rng = _rng(spec.seed)
    if spec.model == "er":
        return _erdos_renyi(spec, rng)
    if spec.model == "ws":
        return _watts_strogatz(spec, rng)
    return _forest_fire(spec, rng)
