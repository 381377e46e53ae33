"""Immutable weighted graph model and ingestion routines.

Graphs are stored in CSR form: ``indptr``/``indices``/``weights`` hold the
sorted adjacency of every node, and ``slot_edge`` maps every adjacency slot
to the id of the undirected edge it belongs to.  Undirected edges are kept
once in ``edge_src < edge_dst`` lexicographic order; an edge id is the
position in those arrays.
"""

from __future__ import annotations

import io
import os
from collections import OrderedDict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "IngestError",
    "WeightedGraph",
    "MembershipRecord",
    "build_from_arrays",
    "build_from_edge_list",
    "project_coauthorship",
    "project_email",
    "neighbors",
    "read_edge_list",
    "write_edge_list",
    "read_memberships",
    "load_graph",
]


class IngestError(ValueError):
    """Raised for malformed input records.  ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class WeightedGraph:
    """Simple undirected graph with strictly positive edge weights.

    Build instances with :func:`build_from_edge_list`,
    :func:`build_from_arrays` or one of the projection helpers; the
    constructor trusts its inputs.
    """

    __slots__ = (
        "n",
        "m",
        "indptr",
        "indices",
        "weights",
        "slot_edge",
        "edge_src",
        "edge_dst",
        "edge_weight",
        "labels",
        "_label_index",
    )

    def __init__(self, n, edge_src, edge_dst, edge_weight, labels):
        self.n = int(n)
        self.m = int(len(edge_src))
        self.edge_src = _frozen(np.ascontiguousarray(edge_src, dtype=np.int64))
        self.edge_dst = _frozen(np.ascontiguousarray(edge_dst, dtype=np.int64))
        self.edge_weight = _frozen(np.ascontiguousarray(edge_weight, dtype=np.float64))
        self.labels = tuple(labels)
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

        # Both directions of every edge, ordered by (row, column).
        rows = np.concatenate([self.edge_src, self.edge_dst])
        cols = np.concatenate([self.edge_dst, self.edge_src])
        eids = np.concatenate([np.arange(self.m, dtype=np.int64)] * 2)
        order = np.lexsort((cols, rows))
        del rows
        self.indices = _frozen(cols[order])
        self.slot_edge = _frozen(eids[order])
        self.weights = _frozen(self.edge_weight[self.slot_edge])
        deg = np.bincount(self.edge_src, minlength=self.n) + np.bincount(
            self.edge_dst, minlength=self.n
        )
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(deg, out=indptr[1:])
        self.indptr = _frozen(indptr)

    def __repr__(self):
        return f"WeightedGraph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.edge_src, other.edge_src)
            and np.array_equal(self.edge_dst, other.edge_dst)
            and np.array_equal(self.edge_weight, other.edge_weight)
        )

    __hash__ = None

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def has_label(self, label: str) -> bool:
        return label in self._label_index

    def _check(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(f"node id {i} out of range [0, {self.n})")
        return int(i)

    def degree(self) -> np.ndarray:
        return np.diff(self.indptr)

    def strength(self) -> np.ndarray:
        """Sum of incident edge weights, accumulated in ascending neighbor order."""
        rows = np.repeat(np.arange(self.n), self.degree())
        return np.bincount(rows, weights=self.weights, minlength=self.n).astype(np.float64)

    def neighbor_ids(self, i: int) -> np.ndarray:
        i = self._check(i)
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def weight(self, i: int, j: int) -> float:
        """Weight of edge ``i``-``j``, 0.0 when absent."""
        i, j = self._check(i), self._check(j)
        lo, hi = self.indptr[i], self.indptr[i + 1]
        pos = lo + np.searchsorted(self.indices[lo:hi], j)
        if pos < hi and self.indices[pos] == j:
            return float(self.weights[pos])
        return 0.0

    def edge_id(self, i: int, j: int) -> int:
        """Edge id of ``i``-``j`` or -1."""
        i, j = self._check(i), self._check(j)
        lo, hi = self.indptr[i], self.indptr[i + 1]
        pos = lo + np.searchsorted(self.indices[lo:hi], j)
        if pos < hi and self.indices[pos] == j:
            return int(self.slot_edge[pos])
        return -1

    def edges(self):
        """Iterate ``(i, j, w)`` with ``i < j`` in edge-id order."""
        for u, v, w in zip(self.edge_src.tolist(), self.edge_dst.tolist(), self.edge_weight.tolist()):
            yield u, v, w

    def to_dense(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        a[self.edge_src, self.edge_dst] = self.edge_weight
        a[self.edge_dst, self.edge_src] = self.edge_weight
        return a

    def scaled(self, factor: float) -> "WeightedGraph":
        """Copy with every weight multiplied by ``factor`` (> 0)."""
        if not factor > 0:
            raise ValueError("scale factor must be positive")
        return WeightedGraph(self.n, self.edge_src, self.edge_dst, self.edge_weight * factor, self.labels)


def neighbors(g: WeightedGraph, i: int) -> list[tuple[int, float]]:
    """``(neighbor, weight)`` pairs of node ``i`` sorted by neighbor id."""
    i = g._check(i)
    lo, hi = g.indptr[i], g.indptr[i + 1]
    return list(zip(g.indices[lo:hi].tolist(), g.weights[lo:hi].tolist()))


def build_from_arrays(n, src, dst, weight=None, labels=None) -> WeightedGraph:
    """Build a graph from parallel endpoint arrays over dense ids ``[0, n)``.

    Self-loops and zero weights are dropped, both orientations of a pair are
    coalesced by summing.  Summation follows input order, so identical input
    gives bit-identical weights.
    """
    src = np.asarray(src, dtype=np.int64)
    dst = np.asarray(dst, dtype=np.int64)
    if weight is None:
        weight = np.ones(len(src))
    weight = np.asarray(weight, dtype=np.float64)
    if not (len(src) == len(dst) == len(weight)):
        raise ValueError("endpoint and weight arrays differ in length")
    if len(src) and (src.min() < 0 or dst.min() < 0 or src.max() >= n or dst.max() >= n):
        raise ValueError("endpoint id out of range")
    if np.any(weight < 0) or not np.all(np.isfinite(weight)):
        raise ValueError("weights must be finite and non-negative")
    if labels is None:
        labels = [str(i) for i in range(n)]
    elif len(labels) != n:
        raise ValueError("label table size does not match n")

    keep = (src != dst) & (weight > 0)
    src, dst, weight = src[keep], dst[keep], weight[keep]
    lo = np.minimum(src, dst)
    hi = np.maximum(src, dst)
    del src, dst
    key = lo * np.int64(n) + hi
    del lo, hi
    uniq, inverse = np.unique(key, return_inverse=True)
    del key
    summed = np.bincount(inverse, weights=weight, minlength=len(uniq))
    return WeightedGraph(n, uniq // n, uniq % n, summed, labels)


class _LabelTable:
    def __init__(self):
        self.ids: OrderedDict[str, int] = OrderedDict()

    def get(self, label: str) -> int:
        idx = self.ids.get(label)
        if idx is None:
            idx = self.ids[label] = len(self.ids)
        return idx

    @property
    def labels(self) -> list[str]:
        return list(self.ids)


def _clean_label(raw, line) -> str:
    if not isinstance(raw, str):
        raise IngestError(f"label must be a string, got {type(raw).__name__}", line)
    lab = raw.strip()
    if not lab:
        raise IngestError("empty node label", line)
    return lab


def build_from_edge_list(records: Iterable, *, first_line: int = 1) -> WeightedGraph:
    """Build a graph from ``(labelA, labelB, weight)`` records.

    Ids are assigned in first-seen order.  Records that are self-loops or
    carry zero weight still register their labels, so those nodes survive
    as isolated nodes.

    Parameters
    ----------
    records : iterable
        Triples ``(labelA, labelB, weight)``; pairs default to weight 1.
        Items may also be ``(line_number, record)`` when produced by
        :func:`read_edge_list`.
    """
    table = _LabelTable()
    src: list[int] = []
    dst: list[int] = []
    wts: list[float] = []
    for k, rec in enumerate(records):
        line = first_line + k
        if isinstance(rec, _Numbered):
            line, rec = rec.line, rec.record
        try:
            if len(rec) == 2:
                a, b = rec
                w = 1.0
            elif len(rec) == 3:
                a, b, w = rec
            else:
                raise IngestError(f"expected 2 or 3 fields, got {len(rec)}", line)
        except TypeError:
            raise IngestError("record is not a sequence", line) from None
        a = _clean_label(a, line)
        b = _clean_label(b, line)
        try:
            w = float(w)
        except (TypeError, ValueError):
            raise IngestError(f"bad weight {w!r}", line) from None
        if not np.isfinite(w) or w < 0:
            raise IngestError(f"weight must be finite and >= 0, got {w!r}", line)
        src.append(table.get(a))
        dst.append(table.get(b))
        wts.append(w)
    labels = table.labels
    return build_from_arrays(len(labels), src, dst, wts, labels)


@dataclass(frozen=True)
class _Numbered:
    line: int
    record: tuple


@dataclass(frozen=True)
class MembershipRecord:
    """One paper (members are authors) or one email (members are recipients).

    ``sender`` is set only for email records.
    """

    item: str
    members: tuple[str, ...]
    sender: str | None = None

    def __post_init__(self):
        if not self.members:
            raise IngestError(f"item {self.item!r} has no members")
        if len(set(self.members)) != len(self.members):
            raise IngestError(f"item {self.item!r} lists a member twice")


def project_coauthorship(records: Sequence[MembershipRecord]) -> WeightedGraph:
    """Co-author graph: each paper with n authors adds 1/(n-1) to every author pair."""
    table = _LabelTable()
    src: list[int] = []
    dst: list[int] = []
    wts: list[float] = []
    for rec in records:
        ids = [table.get(_clean_label(m, None)) for m in rec.members]
        if len(ids) < 2:
            continue
        w = 1.0 / (len(ids) - 1)
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                src.append(ids[a])
                dst.append(ids[b])
                wts.append(w)
    labels = table.labels
    return build_from_arrays(len(labels), src, dst, wts, labels)


def project_email(records: Sequence[MembershipRecord]) -> WeightedGraph:
    """Email graph: a message to r recipients adds 1/r to each sender-recipient pair.

    Both directions of a correspondence are summed into one undirected weight.
    """
    table = _LabelTable()
    src: list[int] = []
    dst: list[int] = []
    wts: list[float] = []
    for rec in records:
        if rec.sender is None or not str(rec.sender).strip():
            raise IngestError(f"email {rec.item!r} has no sender")
        s = table.get(_clean_label(rec.sender, None))
        w = 1.0 / len(rec.members)
        for r in rec.members:
            src.append(s)
            dst.append(table.get(_clean_label(r, None)))
            wts.append(w)
    labels = table.labels
    return build_from_arrays(len(labels), src, dst, wts, labels)


# -- file formats -------------------------------------------------------------


def _split(line: str) -> list[str]:
    if "\t" in line:
        return [f.strip() for f in line.split("\t")]
    return line.split()


def _iter_lines(source):
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            yield from enumerate(fh, start=1)
    else:
        yield from enumerate(source, start=1)


def read_edge_list(source) -> WeightedGraph:
    """Read ``labelA labelB [weight]`` lines; ``#`` lines and blanks are skipped.

    Fields are tab-separated when the line contains a tab, otherwise split
    on whitespace.
    """

    def records():
        for lineno, raw in _iter_lines(source):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = _split(line)
            if len(fields) not in (2, 3):
                raise IngestError(f"expected 2 or 3 fields, got {len(fields)}", lineno)
            yield _Numbered(lineno, tuple(fields))

    return build_from_edge_list(records())


def _declarations_needed(g: WeightedGraph) -> np.ndarray:
    """Nodes that edge lines grouped by larger endpoint would not introduce in id order.

    With edges grouped by ``dst`` (ascending) and sorted by ``src`` inside a
    group, node ``v`` first appears in its own group whenever it has a
    smaller neighbor.  Node 0 appears in group 1 only via the edge (0, 1).
    """
    need = np.ones(g.n, dtype=bool)
    need[g.edge_dst] = False
    if g.n:
        need[0] = g.edge_id(0, 1) < 0 if g.n > 1 else True
    return need


def write_edge_list(g: WeightedGraph, dest, header: str | None = None) -> None:
    """Write tab-separated ``labelA labelB weight`` lines.

    Edges are grouped by their larger endpoint so that reading the file back
    assigns the same ids.  A node the edge lines would introduce out of
    order (or never, when isolated) is declared just before its group as a
    zero-weight self record, which the reader registers and then drops.
    """
    own = isinstance(dest, (str, os.PathLike))
    fh = open(dest, "w", encoding="utf-8", newline="\n") if own else dest
    try:
        if header:
            for h in header.splitlines():
                fh.write(f"# {h}\n")
        labels = g.labels
        order = np.lexsort((g.edge_src, g.edge_dst))
        src = g.edge_src[order].tolist()
        dst = g.edge_dst[order].tolist()
        wts = g.edge_weight[order].tolist()
        declare = np.flatnonzero(_declarations_needed(g)).tolist()
        declare.append(g.n)  # sentinel
        nxt = 0
        buf = io.StringIO()
        for u, v, w in zip(src, dst, wts):
            while declare[nxt] <= v:
                lab = labels[declare[nxt]]
                buf.write(f"{lab}\t{lab}\t0\n")
                nxt += 1
            buf.write(f"{labels[u]}\t{labels[v]}\t{w!r}\n")
            if buf.tell() > 1 << 20:
                fh.write(buf.getvalue())
                buf = io.StringIO()
        for x in declare[nxt:-1]:
            buf.write(f"{labels[x]}\t{labels[x]}\t0\n")
        fh.write(buf.getvalue())
    finally:
        if own:
            fh.close()


def read_memberships(source, mode: str = "coauthor") -> list[MembershipRecord]:
    """Parse a membership file.

    ``coauthor`` lines are ``itemId memberLabel``; ``email`` lines are
    ``emailId sender recipient``.  Records keep first-seen item order and
    duplicate members within an item are collapsed.
    """
    if mode not in ("coauthor", "email"):
        raise ValueError(f"unknown membership mode {mode!r}")
    width = 2 if mode == "coauthor" else 3
    members: OrderedDict[str, list[str]] = OrderedDict()
    senders: dict[str, str] = {}
    for lineno, raw in _iter_lines(source):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = _split(line)
        if len(fields) != width:
            raise IngestError(f"expected {width} fields, got {len(fields)}", lineno)
        item = fields[0]
        if not item or not all(fields):
            raise IngestError("empty field", lineno)
        lst = members.setdefault(item, [])
        if mode == "email":
            sender, who = fields[1], fields[2]
            prev = senders.setdefault(item, sender)
            if prev != sender:
                raise IngestError(f"email {item!r} has two senders", lineno)
        else:
            who = fields[1]
        if who not in lst:
            lst.append(who)
    return [MembershipRecord(item, tuple(ms), senders.get(item)) for item, ms in members.items()]


def load_graph(path, mode: str = "edge-list") -> WeightedGraph:
    if mode == "edge-list":
        return read_edge_list(path)
    if mode == "coauthor":
        return project_coauthorship(read_memberships(path, "coauthor"))
    if mode == "email":
        return project_email(read_memberships(path, "email"))
    raise ValueError(f"unknown input mode {mode!r}")
