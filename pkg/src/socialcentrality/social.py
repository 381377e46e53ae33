"""Sociability, bonding and bridging potentials and the Social Centrality score."""

from __future__ import annotations

import csv
import logging
import os
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .graph import WeightedGraph
from .truss import TrussDecomposition, intra_community_mask, k_truss_decompose

__all__ = [
    "SCConfig",
    "SCScores",
    "sociability",
    "bonding",
    "bridging",
    "sc_score",
    "sc_com_score",
    "read_potentials",
    "read_communities",
    "write_scores",
]

log = logging.getLogger(__name__)

MULTIPLICATIVE = "multiplicative"
WEIGHTED_SUM = "weighted-sum"


@dataclass(frozen=True)
class SCConfig:
    """Innate potentials and the aggregator.

    ``alpha``/``delta`` are scalars or per-node arrays (innate bonding and
    bridging potential).  ``coefficients`` weight ``(omega, beta, gamma)``
    under the weighted-sum aggregator and are ignored otherwise.
    """

    alpha: float | np.ndarray = 1.0
    delta: float | np.ndarray = 1.0
    aggregator: str = MULTIPLICATIVE
    coefficients: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.aggregator not in (MULTIPLICATIVE, WEIGHTED_SUM):
            raise ValueError(f"unknown aggregator {self.aggregator!r}")
        if np.any(np.asarray(self.alpha) < 0) or np.any(np.asarray(self.delta) < 0):
            raise ValueError("innate potentials must be non-negative")
        if len(self.coefficients) != 3 or any(c < 0 for c in self.coefficients):
            raise ValueError("weighted-sum coefficients must be three non-negative numbers")

    def _per_node(self, value, n) -> np.ndarray:
        arr = np.asarray(value, dtype=np.float64)
        if arr.ndim == 0:
            return np.full(n, float(arr))
        if arr.shape != (n,):
            raise ValueError(f"per-node potential has shape {arr.shape}, expected ({n},)")
        return arr

    def alpha_for(self, n: int) -> np.ndarray:
        return self._per_node(self.alpha, n)

    def delta_for(self, n: int) -> np.ndarray:
        return self._per_node(self.delta, n)


@dataclass(frozen=True, eq=False)
class SCScores:
    labels: tuple[str, ...]
    omega: np.ndarray
    beta: np.ndarray
    gamma: np.ndarray
    psi: np.ndarray

    def __len__(self):
        return len(self.labels)

    def rows(self):
        yield from zip(self.labels, self.omega.tolist(), self.beta.tolist(), self.gamma.tolist(), self.psi.tolist())


def _slot_rows(g: WeightedGraph) -> np.ndarray:
    return np.repeat(np.arange(g.n, dtype=np.int64), g.degree())


def _row_sum(rows, values, n) -> np.ndarray:
    # bincount accumulates in slot order, i.e. ascending neighbor id per node
    return np.bincount(rows, weights=values, minlength=n).astype(np.float64, copy=False)


def sociability(g: WeightedGraph) -> np.ndarray:
    """Weighted degree of every node."""
    return g.strength()


def _bonding(g, omega, tau, intra_slot, alpha, rows) -> np.ndarray:
    cols = g.indices
    terms = np.where(intra_slot, omega[cols] * tau[cols], 0.0)
    return alpha + _row_sum(rows, terms, g.n)


def _bridging(g, tau, intra_slot, delta, rows) -> np.ndarray:
    cols = g.indices
    terms = np.where(intra_slot, 0.0, g.weights * tau[cols])
    return delta + _row_sum(rows, terms, g.n)


def bonding(g: WeightedGraph, d: TrussDecomposition, cfg: SCConfig = SCConfig()) -> np.ndarray:
    """Innate bonding potential plus ``omega_j * tau_j`` over intra-community neighbors."""
    tau = d.node_truss.astype(np.float64)
    intra_slot = intra_community_mask(d)[g.slot_edge]
    return _bonding(g, sociability(g), tau, intra_slot, cfg.alpha_for(g.n), _slot_rows(g))


def bridging(g: WeightedGraph, d: TrussDecomposition, cfg: SCConfig = SCConfig()) -> np.ndarray:
    """Innate bridging potential plus ``w_ij * tau_j`` over inter-community neighbors."""
    tau = d.node_truss.astype(np.float64)
    intra_slot = intra_community_mask(d)[g.slot_edge]
    return _bridging(g, tau, intra_slot, cfg.delta_for(g.n), _slot_rows(g))


def _aggregate(omega, beta, gamma, cfg: SCConfig) -> np.ndarray:
    if cfg.aggregator == MULTIPLICATIVE:
        return omega * (1.0 + beta) * (1.0 + gamma)
    a, b, c = cfg.coefficients
    return a * omega + b * beta + c * gamma


def _score(g: WeightedGraph, tau: np.ndarray, intra_edge: np.ndarray, cfg: SCConfig) -> SCScores:
    rows = _slot_rows(g)
    intra_slot = intra_edge[g.slot_edge]
    tau = tau.astype(np.float64)
    omega = _row_sum(rows, g.weights, g.n)
    beta = _bonding(g, omega, tau, intra_slot, cfg.alpha_for(g.n), rows)
    gamma = _bridging(g, tau, intra_slot, cfg.delta_for(g.n), rows)
    del rows, intra_slot
    psi = _aggregate(omega, beta, gamma, cfg)
    return SCScores(g.labels, omega, beta, gamma, psi)


def sc_score(
    g: WeightedGraph, d: TrussDecomposition | None = None, cfg: SCConfig = SCConfig()
) -> SCScores:
    """Social Centrality of every node.

    With the default config this is ``omega * (1 + beta) * (1 + gamma)`` with
    unit innate potentials.  Ties count as intra-community when both
    endpoints and the edge share one trussness.

    Parameters
    ----------
    g : WeightedGraph
    d : TrussDecomposition, optional
        Decomposition of ``g``; computed when omitted.
    cfg : SCConfig
    """
    if d is None:
        d = k_truss_decompose(g)
    elif d.graph is not g and d.graph.m != g.m:
        raise ValueError("decomposition was computed on a different graph")
    return _score(g, d.node_truss, intra_community_mask(d), cfg)


def _community_ids(g: WeightedGraph, communities) -> np.ndarray:
    if isinstance(communities, Mapping):
        missing = [lab for lab in g.labels if lab not in communities]
        if missing:
            raise ValueError(f"{len(missing)} node(s) lack a community id, e.g. {missing[0]!r}")
        return np.array([int(communities[lab]) for lab in g.labels], dtype=np.int64)
    arr = np.asarray(communities)
    if arr.shape != (g.n,):
        raise ValueError(f"community assignment covers {arr.size} nodes, graph has {g.n}")
    return arr.astype(np.int64)


def sc_com_score(
    g: WeightedGraph,
    communities: Mapping[str, int] | Sequence[int] | np.ndarray,
    cfg: SCConfig = SCConfig(),
    d: TrussDecomposition | None = None,
) -> SCScores:
    """SC-Com: same score, but a tie is intra-community iff both ends share a community.

    ``communities`` maps labels to ids or lists one id per node id.  Node
    trussness still weights the neighbor terms.
    """
    comm = _community_ids(g, communities)
    if d is None:
        d = k_truss_decompose(g)
    intra = comm[g.edge_src] == comm[g.edge_dst]
    return _score(g, d.node_truss, intra, cfg)


# -- files ----------------------------------------------------------------------


def _read_label_csv(path, columns):
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or any(c not in reader.fieldnames for c in columns):
            raise ValueError(f"{os.fspath(path)}: expected header with columns {', '.join(columns)}")
        for lineno, row in enumerate(reader, start=2):
            yield lineno, row


def read_potentials(path, g: WeightedGraph) -> SCConfig:
    """Load a ``label,alpha,delta`` CSV.  Nodes not listed keep potential 1."""
    alpha = np.ones(g.n)
    delta = np.ones(g.n)
    unknown = 0
    for lineno, row in _read_label_csv(path, ("label", "alpha", "delta")):
        lab = row["label"].strip()
        if not g.has_label(lab):
            unknown += 1
            continue
        i = g.index(lab)
        try:
            alpha[i] = float(row["alpha"])
            delta[i] = float(row["delta"])
        except ValueError:
            raise ValueError(f"{os.fspath(path)}: line {lineno}: non-numeric potential") from None
    if unknown:
        log.warning("%d potential row(s) name nodes absent from the graph", unknown)
    return SCConfig(alpha=alpha, delta=delta)


def read_communities(path) -> dict[str, int]:
    """Load a ``label,community`` CSV."""
    out = {}
    for lineno, row in _read_label_csv(path, ("label", "community")):
        try:
            out[row["label"].strip()] = int(row["community"])
        except ValueError:
            raise ValueError(f"{os.fspath(path)}: line {lineno}: community id must be an integer") from None
    return out


def write_scores(scores: SCScores, dest) -> None:
    """CSV ``label,omega,beta,gamma,psi`` with 12 significant digits."""
    own = isinstance(dest, (str, os.PathLike))
    fh = open(dest, "w", newline="", encoding="utf-8") if own else dest
    try:
        fh.write("label,omega,beta,gamma,psi\n")
        for lab, o, b, c, p in scores.rows():
            fh.write(f"{_csv_label(lab)},{o:.12g},{b:.12g},{c:.12g},{p:.12g}\n")
    finally:
        if own:
            fh.close()


def _csv_label(label: str) -> str:
    if any(ch in label for ch in ',"\n'):
        return '"' + label.replace('"', '""') + '"'
    return label
