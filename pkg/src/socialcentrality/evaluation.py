"""Tied ranking of score vectors and agreement metrics against ground truth."""

from __future__ import annotations

import csv
import logging
import math
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy.stats import rankdata

from .baselines import CentralityVector

__all__ = [
    "RankedList",
    "GroundTruth",
    "rank_scores",
    "rank_values",
    "rmse_topk",
    "jaccard_topk",
    "precision_recall",
    "spearman",
    "spearman_rho",
    "evaluate",
    "read_ground_truth",
    "write_report",
    "write_rank_table",
    "REPORT_COLUMNS",
]

log = logging.getLogger(__name__)

# Scores are compared after rounding to this many significant digits.
TIE_DIGITS = 9
REPORT_COLUMNS = ("measure", "k", "rmse", "jaccard", "precision", "recall", "spearman")


def _round_sig(values: np.ndarray, digits: int = TIE_DIGITS) -> np.ndarray:
    return np.array([float(f"{v:.{digits}g}") if math.isfinite(v) else v for v in values.tolist()])


def _competition_ranks(sorted_keys: np.ndarray) -> np.ndarray:
    """Competition ranks ("1224") of an already sorted key array."""
    n = len(sorted_keys)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    new_group = np.ones(n, dtype=bool)
    new_group[1:] = sorted_keys[1:] != sorted_keys[:-1]
    starts = np.where(new_group, np.arange(n), 0)
    return np.maximum.accumulate(starts) + 1


@dataclass(frozen=True, eq=False)
class RankedList:
    """``ranks[i]`` is the competition rank of node ``i``; ``order`` lists
    node ids best-first with ties broken by label."""

    measure: str
    labels: tuple[str, ...]
    ranks: np.ndarray
    order: np.ndarray

    def rank_of(self, label: str) -> int:
        return int(self.ranks[self._index[label]])

    def __contains__(self, label) -> bool:
        return label in self._index

    @property
    def _index(self) -> dict[str, int]:
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_idx", idx)
        return idx

    def top(self, k: int) -> list[str]:
        return [self.labels[i] for i in self.order[:k].tolist()]

    def as_dict(self) -> dict[str, int]:
        return dict(zip(self.labels, self.ranks.tolist()))


def rank_values(measure: str, labels: Sequence[str], values, higher_is_better: bool = True) -> RankedList:
    """Competition ranking of raw values; see :func:`rank_scores`."""
    values = np.asarray(values, dtype=np.float64)
    if np.any(np.isnan(values)):
        raise ValueError("cannot rank NaN scores")
    key = _round_sig(values)
    if higher_is_better:
        key = -key
    label_rank = np.empty(len(labels), dtype=np.int64)
    label_rank[np.argsort(np.array(labels, dtype=object), kind="stable")] = np.arange(len(labels))
    order = np.lexsort((label_rank, key))
    ranks = np.empty(len(labels), dtype=np.int64)
    ranks[order] = _competition_ranks(key[order])
    return RankedList(measure, tuple(labels), ranks, order)


def rank_scores(scores: CentralityVector) -> RankedList:
    """Competition ranking of a score vector, best first.

    Scores equal to 9 significant digits tie.  Lower-is-better measures
    rank ascending; ``inf`` sentinels land last.
    """
    return rank_values(scores.measure, scores.labels, scores.values, scores.higher_is_better)


@dataclass(frozen=True)
class GroundTruth:
    """External importance value per label, higher is more important."""

    values: Mapping[str, float]

    def ordered(self) -> list[str]:
        """Labels by descending value, ties by label."""
        return sorted(self.values, key=lambda lab: (-self.values[lab], lab))

    def ranks(self) -> dict[str, int]:
        labels = list(self.values)
        return rank_values("ground-truth", labels, [self.values[x] for x in labels], True).as_dict()

    def restricted(self, present: Iterable[str]) -> "GroundTruth":
        present = set(present)
        kept = {lab: v for lab, v in self.values.items() if lab in present}
        missing = len(self.values) - len(kept)
        if missing:
            log.warning("%d ground-truth node(s) absent from the graph were ignored", missing)
        return GroundTruth(kept)


def read_ground_truth(path) -> GroundTruth:
    """Load a ``label,value`` CSV."""
    values = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not {"label", "value"} <= set(reader.fieldnames):
            raise ValueError(f"{os.fspath(path)}: expected header label,value")
        for lineno, row in enumerate(reader, start=2):
            try:
                values[row["label"].strip()] = float(row["value"])
            except (TypeError, ValueError):
                raise ValueError(f"{os.fspath(path)}: line {lineno}: bad value {row.get('value')!r}") from None
    return GroundTruth(values)


def _warn_boundary_tie(name: str, keys: Sequence[float], k: int) -> None:
    if 0 < k < len(keys) and keys[k - 1] == keys[k]:
        tied = sum(1 for x in keys if x == keys[k])
        log.warning("%s: tie group of size %d crosses the top-%d boundary; truncated by label order", name, tied, k)


def _gt_topk(gt: GroundTruth, r: RankedList, k: int) -> list[str]:
    present = gt.restricted(r.labels)
    ordered = present.ordered()
    _warn_boundary_tie("ground truth", [present.values[x] for x in ordered], k)
    return ordered[:k]


def _measure_topk(r: RankedList, k: int) -> list[str]:
    _warn_boundary_tie(r.measure, r.ranks[r.order].tolist(), k)
    return r.top(k)


def rmse_topk(gt: GroundTruth, r: RankedList, k: int) -> float:
    """Root mean squared gap between the measure's rank of the t-th
    ground-truth actor and t, over the top ``k`` ground-truth actors.

    Actors missing from the ranking are dropped with a warning; the
    remaining ones keep their ground-truth position.  Returns the unrounded
    value.
    """
    if k < 1:
        raise ValueError("k must be positive")
    sq = []
    missing = 0
    for t, label in enumerate(gt.ordered()[:k], start=1):
        if label not in r:
            missing += 1
            continue
        sq.append((r.rank_of(label) - t) ** 2)
    if missing:
        log.warning("rmse: %d top-%d ground-truth actor(s) absent from the graph; k reduced to %d", missing, k, len(sq))
    if not sq:
        raise ValueError("no top-k ground-truth actor is present in the ranking")
    return math.sqrt(sum(sq) / len(sq))


def _check_k(k, r):
    if not 1 <= k <= len(r.labels):
        raise ValueError(f"k={k} outside [1, {len(r.labels)}]")


def jaccard_topk(gt: GroundTruth, r: RankedList, k: int) -> float:
    """Overlap of the top-k ground-truth set and the measure's top-k set."""
    _check_k(k, r)
    g = set(_gt_topk(gt, r, k))
    p = set(_measure_topk(r, k))
    union = g | p
    return len(g & p) / len(union) if union else 0.0


def precision_recall(gt: GroundTruth, r: RankedList, k: int) -> tuple[float, float]:
    """Precision and recall of the measure's top-k against the top-k ground truth."""
    _check_k(k, r)
    relevant = set(_gt_topk(gt, r, k))
    retrieved = set(_measure_topk(r, k))
    hit = len(relevant & retrieved)
    precision = hit / len(retrieved) if retrieved else 0.0
    recall = hit / len(relevant) if relevant else 0.0
    return precision, recall


def spearman(x, y) -> float:
    """Spearman's rho with average ranks for ties.

    Raises ``ValueError`` when either side has no rank variance.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("spearman needs two equal-length vectors")
    if len(x) < 2:
        raise ValueError("spearman needs at least two observations")
    rx = rankdata(x)
    ry = rankdata(y)
    rx -= rx.mean()
    ry -= ry.mean()
    sxx = float(np.dot(rx, rx))
    syy = float(np.dot(ry, ry))
    if sxx == 0 or syy == 0:
        raise ValueError("spearman is undefined for a constant ranking")
    return float(np.dot(rx, ry)) / math.sqrt(sxx * syy)


def spearman_rho(gt: GroundTruth, r: RankedList) -> float:
    """Rank correlation between ground truth and the measure over shared nodes."""
    present = gt.restricted(r.labels)
    labels = list(present.values)
    truth = [-present.values[x] for x in labels]
    measured = [r.rank_of(x) for x in labels]
    return spearman(truth, measured)


def _safe(fn, *args):
    try:
        return fn(*args)
    except ValueError as exc:
        log.warning("%s: %s", fn.__name__, exc)
        return float("nan")


def evaluate(gt: GroundTruth, r: RankedList, ks: Sequence[int]) -> list[dict]:
    """One report row per k."""
    rho = _safe(spearman_rho, gt, r)
    rows = []
    for k in ks:
        kk = min(k, len(r.labels))
        pr = _safe(precision_recall, gt, r, kk)
        precision, recall = pr if isinstance(pr, tuple) else (pr, pr)
        rows.append(
            {
                "measure": r.measure,
                "k": k,
                "rmse": _safe(rmse_topk, gt, r, k),
                "jaccard": _safe(jaccard_topk, gt, r, kk),
                "precision": precision,
                "recall": recall,
                "spearman": rho,
            }
        )
    return rows


def write_report(rows: Iterable[dict], dest) -> None:
    """CSV ``measure,k,rmse,jaccard,precision,recall,spearman``."""
    own = isinstance(dest, (str, os.PathLike))
    fh = open(dest, "w", newline="", encoding="utf-8") if own else dest
    try:
        fh.write(",".join(REPORT_COLUMNS) + "\n")
        for row in rows:
            cells = [str(row["measure"]), str(row["k"])]
            cells += [f"{row[c]:.12g}" for c in REPORT_COLUMNS[2:]]
            fh.write(",".join(cells) + "\n")
    finally:
        if own:
            fh.close()


def write_rank_table(ranked: Sequence[RankedList], dest, top: int | None = None) -> None:
    """Tab-separated rank matrix, one column per measure.

    Rows follow the first measure's order.  With ``top`` set, ranks beyond
    it print as ``-``.
    """
    if not ranked:
        raise ValueError("no rankings to tabulate")
    first = ranked[0]
    own = isinstance(dest, (str, os.PathLike))
    fh = open(dest, "w", newline="", encoding="utf-8") if own else dest
    try:
        fh.write("\t".join(["label"] + [r.measure for r in ranked]) + "\n")
        for i in first.order.tolist():
            label = first.labels[i]
            cells = [label]
            for r in ranked:
                if label not in r:
                    cells.append("-")
                    continue
                rk = r.rank_of(label)
                cells.append("-" if top is not None and rk > top else str(rk))
            fh.write("\t".join(cells) + "\n")
    finally:
        if own:
            fh.close()
