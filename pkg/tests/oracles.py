"""Brute-force reference computations over dense matrices.

Nothing here calls into the package beyond reading a graph's dense
adjacency, so these stay independent of the code under test.
"""

from __future__ import annotations

import itertools
import math

import numpy as np


def random_dense(n, p, rng, weighted=True, low=0.5, high=5.0):
    a = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < p:
            w = rng.uniform(low, high) if weighted else 1.0
            a[i, j] = a[j, i] = w
    return a


def edges_of(a):
    n = len(a)
    return [(i, j, a[i, j]) for i, j in itertools.combinations(range(n), 2) if a[i, j] > 0]


def support_by_triples(a):
    """Triangle count per edge by enumerating every node triple."""
    n = len(a)
    sup = {(i, j): 0 for i, j, _ in edges_of(a)}
    for i, j, k in itertools.combinations(range(n), 3):
        if a[i, j] > 0 and a[j, k] > 0 and a[i, k] > 0:
            sup[(i, j)] += 1
            sup[(j, k)] += 1
            sup[(i, k)] += 1
    return sup


def truss_fixed_point(a):
    """Edge trussness from the definition: for every k independently, delete
    edges in fewer than k-2 triangles until nothing changes."""
    n = len(a)
    all_edges = {(i, j) for i, j, _ in edges_of(a)}
    result = {e: 2 for e in all_edges}
    k = 3
    while True:
        alive = set(all_edges)
        changed = True
        while changed:
            changed = False
            adj = {v: set() for v in range(n)}
            for i, j in alive:
                adj[i].add(j)
                adj[j].add(i)
            for i, j in list(alive):
                if len(adj[i] & adj[j]) < k - 2:
                    alive.discard((i, j))
                    changed = True
        if not alive:
            return result
        for e in alive:
            result[e] = k
        k += 1


def all_simple_paths(a, s, t):
    n = len(a)
    stack = [(s, [s])]
    while stack:
        v, path = stack.pop()
        for w in range(n):
            if a[v, w] > 0 and w not in path:
                if w == t:
                    yield path + [w]
                else:
                    stack.append((w, path + [w]))


def path_length(a, path, conv):
    total = 0.0
    for u, v in zip(path, path[1:]):
        total += 1.0 / a[u, v] if conv == "reciprocal" else a[u, v]
    return total


def shortest_paths_by_enumeration(a, s, t, conv, rtol=1e-12):
    paths = list(all_simple_paths(a, s, t))
    if not paths:
        return math.inf, []
    lengths = [path_length(a, p, conv) for p in paths]
    best = min(lengths)
    return best, [p for p, length in zip(paths, lengths) if length <= best * (1 + rtol)]


def betweenness_by_enumeration(a, conv):
    n = len(a)
    bc = np.zeros(n)
    for s, t in itertools.combinations(range(n), 2):
        _, paths = shortest_paths_by_enumeration(a, s, t, conv)
        if not paths:
            continue
        for p in paths:
            for v in p[1:-1]:
                bc[v] += 1.0 / len(paths)
    return bc


def closeness_by_enumeration(a, conv):
    n = len(a)
    cc = np.zeros(n)
    for s in range(n):
        total, reach = 0.0, 0
        for t in range(n):
            if t == s:
                continue
            d, _ = shortest_paths_by_enumeration(a, s, t, conv)
            if math.isfinite(d):
                total += d
                reach += 1
        cc[s] = reach / total if total > 0 else 0.0
    return cc


def laplacian_energy_dense(a):
    x = a.sum(axis=1)
    return float(np.sum(x**2) + np.sum(a**2))  # every edge appears twice in a


def laplacian_by_deletion(a):
    n = len(a)
    e0 = laplacian_energy_dense(a)
    out = np.zeros(n)
    for v in range(n):
        keep = [i for i in range(n) if i != v]
        out[v] = e0 - laplacian_energy_dense(a[np.ix_(keep, keep)])
    return out


def principal_eigenvector(a):
    vals, vecs = np.linalg.eigh(a)
    v = np.abs(vecs[:, -1])
    return v / v.max(), vals


def constraint_dense(a):
    n = len(a)
    s = a.sum(axis=1)
    p = np.divide(a, s[:, None], out=np.zeros_like(a), where=s[:, None] > 0)
    out = np.full(n, np.inf)
    for i in range(n):
        if s[i] == 0:
            continue
        total = 0.0
        for j in range(n):
            if a[i, j] == 0:
                continue
            indirect = sum(p[i, q] * p[q, j] for q in range(n) if q not in (i, j))
            total += (p[i, j] + indirect) ** 2
        out[i] = total
    return out
