"""Immutable graph containers, attribute maps and file ingestion.

Nodes carry dense integer ids ``0..n-1``; the external string labels read
from files are kept alongside so that reports can be written back in the
user's vocabulary.  Adjacency is stored in compressed sparse row form
(``indptr``/``indices``), which every metric module vectorises over.
"""
from __future__ import annotations

import csv
import io
import math
from importlib import resources
from typing import Iterable, Sequence, TextIO

import numpy as np

__all__ = [
    "InputError",
    "Graph",
    "DiGraph",
    "AttributeMap",
    "load_edge_list",
    "load_attributes",
    "degree_sequence",
    "karate_club",
    "star_graph",
    "cycle_graph",
    "path_graph",
]


class InputError(ValueError):
    """Malformed or inconsistent user input (edge lists, attribute files)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _csr(n: int, src: np.ndarray, dst: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.lexsort((dst, src))
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, dst[order].astype(np.int64)


def _default_labels(n: int, labels: Sequence[str] | None) -> tuple[str, ...]:
    if labels is None:
        return tuple(str(i) for i in range(n))
    labels = tuple(str(x) for x in labels)
    if len(labels) != n:
        raise ValueError(f"expected {n} labels, got {len(labels)}")
    if len(set(labels)) != n:
        raise ValueError("node labels must be unique")
    return labels


class Graph:
    """Simple undirected graph.

    Parameters
    ----------
    n : int
        Number of nodes.
    edges : iterable of (int, int)
        Node-id pairs.  Pairs are canonicalised to ``u < v``; duplicates
        (including reversed ones) collapse.  Self-loops raise ``ValueError``.
    labels : sequence of str, optional
        External node labels; defaults to ``"0".."n-1"``.
    """

    __slots__ = ("n", "edges", "labels", "indptr", "indices", "degrees", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        n = int(n)
        if n < 0:
            raise ValueError("node count must be non-negative")
        arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("edge endpoint outside [0, n)")
        loops = arr[:, 0] == arr[:, 1]
        if loops.any():
            raise ValueError(f"self-loop at node {int(arr[loops][0, 0])}")
        arr = np.sort(arr, axis=1)
        arr = np.unique(arr, axis=0) if arr.size else arr
        self.n = n
        self.edges = _frozen(arr)
        self.labels = _default_labels(n, labels)
        src = np.concatenate([arr[:, 0], arr[:, 1]])
        dst = np.concatenate([arr[:, 1], arr[:, 0]])
        indptr, indices = _csr(n, src, dst)
        self.indptr = _frozen(indptr)
        self.indices = _frozen(indices)
        self.degrees = _frozen(np.diff(indptr))
        self._index = None

    @classmethod
    def from_edges(cls, pairs: Iterable[tuple[str, str]]) -> "Graph":
        """Build from label pairs, assigning ids in first-appearance order."""
        ids: dict[str, int] = {}
        out = []
        for u, v in pairs:
            a = ids.setdefault(str(u), len(ids))
            b = ids.setdefault(str(v), len(ids))
            out.append((a, b))
        return cls(len(ids), out, labels=list(ids))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(x) for x in self.neighbors(v)) for v in range(self.n))

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.degrees[v])

    def edge_sources(self) -> np.ndarray:
        """Centre node of each entry of ``indices`` (one entry per edge end)."""
        return np.repeat(np.arange(self.n), self.degrees)

    def index(self, label: str) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def to_edge_list(self) -> str:
        return "".join(f"{self.labels[u]} {self.labels[v]}\n" for u, v in self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and self.labels == other.labels
                and np.array_equal(self.edges, other.edges))

    def __hash__(self):
        return hash((self.n, self.labels, self.edges.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class DiGraph:
    """Simple directed graph with follower semantics.

    An arc ``u -> v`` means *u follows v*: ``v`` is one of u's friends
    (out-neighbours) and ``u`` one of v's followers (in-neighbours).
    """

    __slots__ = ("n", "arcs", "labels", "out_indptr", "out_indices",
                 "in_indptr", "in_indices", "out_degrees", "in_degrees")

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        n = int(n)
        arr = np.asarray(list(arcs) if not isinstance(arcs, np.ndarray) else arcs, dtype=np.int64)
        arr = arr.reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise ValueError("arc endpoint outside [0, n)")
        loops = arr[:, 0] == arr[:, 1]
        if loops.any():
            raise ValueError(f"self-loop at node {int(arr[loops][0, 0])}")
        arr = np.unique(arr, axis=0) if arr.size else arr
        self.n = n
        self.arcs = _frozen(arr)
        self.labels = _default_labels(n, labels)
        oi, ox = _csr(n, arr[:, 0], arr[:, 1])
        ii, ix = _csr(n, arr[:, 1], arr[:, 0])
        self.out_indptr, self.out_indices = _frozen(oi), _frozen(ox)
        self.in_indptr, self.in_indices = _frozen(ii), _frozen(ix)
        self.out_degrees = _frozen(np.diff(oi))
        self.in_degrees = _frozen(np.diff(ii))

    @classmethod
    def from_arcs(cls, pairs: Iterable[tuple[str, str]]) -> "DiGraph":
        ids: dict[str, int] = {}
        out = []
        for u, v in pairs:
            a = ids.setdefault(str(u), len(ids))
            b = ids.setdefault(str(v), len(ids))
            out.append((a, b))
        return cls(len(ids), out, labels=list(ids))

    @property
    def m(self) -> int:
        return len(self.arcs)

    def friends(self, v: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[v]:self.out_indptr[v + 1]]

    def followers(self, v: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[v]:self.in_indptr[v + 1]]

    def to_edge_list(self) -> str:
        return "".join(f"{self.labels[u]} {self.labels[v]}\n" for u, v in self.arcs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiGraph):
            return NotImplemented
        return (self.n == other.n and self.labels == other.labels
                and np.array_equal(self.arcs, other.arcs))

    def __hash__(self):
        return hash((self.n, self.labels, self.arcs.tobytes()))

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, m={self.m})"


class AttributeMap:
    """One real value per node; ``kind`` is ``"binary"`` or ``"numeric"``.

    When ``kind`` is omitted it is inferred: binary iff every value is 0 or 1.
    """

    __slots__ = ("values", "kind")

    def __init__(self, values: Iterable[float], kind: str | None = None):
        vals = np.array(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("attribute values must be one-dimensional")
        if not np.all(np.isfinite(vals)):
            raise ValueError("attribute values must be finite")
        is_binary = bool(np.all((vals == 0) | (vals == 1)))
        if kind is None:
            kind = "binary" if is_binary else "numeric"
        if kind not in ("binary", "numeric"):
            raise ValueError(f"unknown attribute kind {kind!r}")
        if kind == "binary" and not is_binary:
            raise ValueError("binary attribute map holds values other than 0/1")
        self.values = _frozen(vals)
        self.kind = kind

    def __len__(self) -> int:
        return len(self.values)

    @property
    def prevalence(self) -> float:
        return float(self.values.mean())

    def require_binary(self) -> None:
        if self.kind != "binary":
            raise ValueError("operation requires a binary attribute")

    def to_csv(self, labels: Sequence[str]) -> str:
        rows = ["node,value"]
        for lab, x in zip(labels, self.values):
            rows.append(f"{lab},{int(x) if x.is_integer() else repr(float(x))}")
        return "\n".join(rows) + "\n"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AttributeMap):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.kind, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"AttributeMap(n={len(self)}, kind={self.kind!r})"


def _as_text(source: str | TextIO) -> TextIO:
    return io.StringIO(source) if isinstance(source, str) else source


def load_edge_list(source: str | TextIO, directed: bool = False) -> Graph | DiGraph:
    """Parse ``"U V"`` lines into a graph.

    ``#`` starts a comment, blank lines are skipped, and tokens after the
    second are ignored.  Duplicate edges collapse (in the undirected case
    so do reversed duplicates); self-loops are rejected.
    """
    pairs = []
    for lineno, raw in enumerate(_as_text(source), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise InputError(f"expected two node labels, got {line!r}", lineno)
        u, v = tokens[0], tokens[1]
        if u == v:
            raise InputError(f"self-loop at node {u!r}", lineno)
        pairs.append((u, v))
    if directed:
        return DiGraph.from_arcs(pairs)
    return Graph.from_edges(pairs)


def load_attributes(source: str | TextIO, g: Graph | DiGraph) -> AttributeMap:
    """Read a ``node,value`` CSV whose rows cover every node of ``g`` once."""
    reader = csv.reader(_as_text(source))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["node", "value"]:
        raise InputError("attribute file must start with header 'node,value'", 1)
    index = {lab: i for i, lab in enumerate(g.labels)}
    values = np.full(g.n, np.nan)
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != 2:
            raise InputError(f"expected 2 columns, got {len(row)}", lineno)
        label, raw = row[0].strip(), row[1].strip()
        if label not in index:
            raise InputError(f"unknown node {label!r}", lineno)
        try:
            x = float(raw)
        except ValueError:
            raise InputError(f"non-numeric value {raw!r}", lineno) from None
        if not math.isfinite(x):
            raise InputError(f"non-finite value {raw!r}", lineno)
        i = index[label]
        if not np.isnan(values[i]):
            raise InputError(f"duplicate node {label!r}", lineno)
        values[i] = x
    missing = np.flatnonzero(np.isnan(values))
    if missing.size:
        raise InputError(f"missing node {g.labels[missing[0]]!r}")
    return AttributeMap(values)


def integer_values(values: np.ndarray) -> list[int] | None:
    """Values as Python ints when every entry is integral, else ``None``.

    Lets statistics of binary or count traits be summed exactly.
    """
    if not np.all(np.isfinite(values)) or not np.array_equal(values, np.round(values)):
        return None
    return [int(v) for v in values]


def degree_sequence(g: Graph) -> tuple[int, ...]:
    return tuple(int(d) for d in g.degrees)


# Fixtures -----------------------------------------------------------------

def karate_club() -> Graph:
    """Zachary's karate club: 34 nodes, 78 edges, labels ``"1".."34"``."""
    text = resources.files("friendparadox").joinpath("data/karate.edgelist").read_text()
    return load_edge_list(text)


def star_graph(leaves: int = 4) -> Graph:
    """Star with centre ``"c"`` (id 0) and leaves ``"1".."L"``."""
    labels = ["c"] + [str(i) for i in range(1, leaves + 1)]
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)], labels)


def cycle_graph(n: int = 5) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int = 4) -> Graph:
    """Path ``a - b - c - d ...`` labelled with consecutive letters."""
    labels = [chr(ord("a") + i) for i in range(n)] if n <= 26 else None
    return Graph(n, [(i, i + 1) for i in range(n - 1)], labels)
