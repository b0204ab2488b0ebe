"""Directed graph over dense integer node ids, with edge-list file I/O.

Every other module builds on this representation. Graphs are immutable
after construction; node labels (operand strings, block addresses) live
in a side table so the metric code only ever sees integer ids.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence

import numpy as np


class EndpointOutOfRange(ValueError):
    """An edge endpoint falls outside [0, n)."""


class ParseError(ValueError):
    """A graph file line could not be parsed. Carries the 1-based line number."""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class InconsistentHeader(ParseError):
    """The declared node count is smaller than max node id + 1."""


class DirectedGraph:
    """Immutable directed graph without duplicate edges.

    Self-loops are allowed and tracked, but they are dropped from the
    undirected view (and therefore from every undirected metric).
    Equality compares node count and edge set only; labels are a side
    table and do not participate.
    """

    __slots__ = ("n", "_edges", "labels", "_und_pairs", "_und_deg", "_und_csr")

    def __init__(self, n: int, edges: np.ndarray, labels: Optional[dict[int, str]] = None):
        # `edges` must already be deduplicated and lexicographically sorted;
        # use build_graph() unless the array is known to be canonical.
        self.n = int(n)
        self._edges = edges
        self.labels = labels
        self._und_pairs: Optional[np.ndarray] = None
        self._und_deg: Optional[np.ndarray] = None
        self._und_csr: Optional[tuple[np.ndarray, np.ndarray]] = None

    # -- basic accessors ------------------------------------------------

    @property
    def num_edges(self) -> int:
        """Directed edge count (the L of a directed graph)."""
        return int(self._edges.shape[0])

    @property
    def edge_array(self) -> np.ndarray:
        """(L, 2) int64 array of directed edges, sorted, deduplicated."""
        return self._edges

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self._edges}

    @property
    def has_self_loops(self) -> bool:
        return bool(np.any(self._edges[:, 0] == self._edges[:, 1])) if self.num_edges else False

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._edges, other._edges)

    def __hash__(self):  # graphs are dict keys in a few tests
        return hash((self.n, self._edges.tobytes()))

    def __repr__(self) -> str:
        return f"DirectedGraph(n={self.n}, edges={self.num_edges})"

    # -- degrees ---------------------------------------------------------

    def out_degrees(self) -> np.ndarray:
        return np.bincount(self._edges[:, 0], minlength=self.n).astype(np.int64)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self._edges[:, 1], minlength=self.n).astype(np.int64)

    def total_degrees(self) -> np.ndarray:
        return self.in_degrees() + self.out_degrees()

    # -- undirected view ---------------------------------------------------

    def undirected_pairs(self) -> np.ndarray:
        """Unique {u, v} pairs as a (L_u, 2) array with u < v; self-loops dropped."""
        if self._und_pairs is None:
            e = self._edges
            e = e[e[:, 0] != e[:, 1]]
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            pairs = np.stack([lo, hi], axis=1) if e.size else np.empty((0, 2), dtype=np.int64)
            self._und_pairs = np.unique(pairs, axis=0) if pairs.size else pairs
        return self._und_pairs

    @property
    def undirected_edge_count(self) -> int:
        return int(self.undirected_pairs().shape[0])

    def undirected_degrees(self) -> np.ndarray:
        if self._und_deg is None:
            pairs = self.undirected_pairs()
            deg = np.bincount(pairs[:, 0], minlength=self.n)
            deg += np.bincount(pairs[:, 1], minlength=self.n)
            self._und_deg = deg.astype(np.int64)
        return self._und_deg

    def undirected_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Symmetric adjacency in CSR form: (indptr int64, indices int32).

        Neighbor lists are sorted ascending. Self-loops are absent.
        """
        if self._und_csr is None:
            pairs = self.undirected_pairs()
            if pairs.size:
                src = np.concatenate([pairs[:, 0], pairs[:, 1]])
                dst = np.concatenate([pairs[:, 1], pairs[:, 0]])
                order = np.lexsort((dst, src))
                src, dst = src[order], dst[order]
            else:
                src = np.empty(0, dtype=np.int64)
                dst = np.empty(0, dtype=np.int64)
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.add.at(indptr, src + 1, 1)
            np.cumsum(indptr, out=indptr)
            self._und_csr = (indptr, dst.astype(np.int32))
        return self._und_csr


def build_graph(
    n: int,
    edge_list: Iterable[tuple[int, int]] | Sequence[Sequence[int]] | np.ndarray,
    labels: Optional[Mapping[int, str]] = None,
) -> DirectedGraph:
    """Build a graph from an edge list, collapsing duplicate pairs.

    Raises EndpointOutOfRange when an endpoint is outside [0, n).
    Insertion order of the edge list never affects the result.
    """
    if n < 0:
        raise ValueError(f"node count must be non-negative, got {n}")
    edges = np.asarray(list(edge_list) if not isinstance(edge_list, np.ndarray) else edge_list,
                       dtype=np.int64)
    if edges.size == 0:
        edges = np.empty((0, 2), dtype=np.int64)
    if edges.ndim != 2 or edges.shape[1] != 2:
        raise ValueError("edge list must be a sequence of (u, v) pairs")
    if edges.shape[0]:
        bad = (edges < 0) | (edges >= n)
        if bad.any():
            u, v = edges[bad.any(axis=1)][0]
            raise EndpointOutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        edges = np.unique(edges, axis=0)
    return DirectedGraph(n, edges, dict(labels) if labels is not None else None)


def degree_sequence(g: DirectedGraph, mode: str = "undirected") -> np.ndarray:
    """Degree of every node, length n.

    mode: "in", "out", "total" (in+out over directed edges, self-loops
    counted on both sides), or "undirected" (merged view, no self-loops).
    """
    if mode == "in":
        return g.in_degrees()
    if mode == "out":
        return g.out_degrees()
    if mode == "total":
        return g.total_degrees()
    if mode == "undirected":
        return g.undirected_degrees()
    raise ValueError(f"unknown degree mode: {mode!r}")


# -- file formats ----------------------------------------------------------
#
# Edge-list text format (the interchange format):
#     nodes <N>        optional header; required to represent isolated nodes
#     u v              one directed edge per line
#     # ...            comments, skipped on read
#
# write_edge_list always emits the canonical form: header, then edges
# sorted lexicographically, "\n" line endings. read(write(g)) == g and a
# rewrite of a canonical file is byte-identical.
#
# Adjacency-matrix CSV import (--format matrix) accepts a square matrix
# of numbers; every nonzero cell (i, j) becomes the directed edge i -> j.


def write_edge_list(g: DirectedGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"nodes {g.n}\n")
        for u, v in g.edge_array:
            fh.write(f"{u} {v}\n")


def read_edge_list(path, fmt: str = "edges") -> DirectedGraph:
    """Read a graph file; fmt is "edges" or "matrix".

    Raises ParseError (with line number) on malformed content and
    InconsistentHeader when a declared node count is too small.
    """
    if fmt == "matrix":
        return _read_matrix_csv(path)
    if fmt != "edges":
        raise ValueError(f"unknown graph format: {fmt!r}")

    declared_n: Optional[int] = None
    edges: list[tuple[int, int]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = text.split()
            if fields[0] == "nodes":
                if declared_n is not None:
                    raise ParseError("duplicate 'nodes' header", lineno)
                if len(fields) != 2:
                    raise ParseError("header must be 'nodes <N>'", lineno)
                try:
                    declared_n = int(fields[1])
                except ValueError:
                    raise ParseError(f"bad node count {fields[1]!r}", lineno) from None
                if declared_n < 0:
                    raise ParseError("node count must be non-negative", lineno)
                continue
            if len(fields) != 2:
                raise ParseError(f"expected 'u v', got {text!r}", lineno)
            try:
                u, v = int(fields[0]), int(fields[1])
            except ValueError:
                raise ParseError(f"non-integer endpoint in {text!r}", lineno) from None
            if u < 0 or v < 0:
                raise ParseError(f"negative node id in {text!r}", lineno)
            edges.append((u, v))

    max_id = max((max(u, v) for u, v in edges), default=-1)
    if declared_n is None:
        n = max_id + 1
    else:
        if declared_n < max_id + 1:
            raise InconsistentHeader(
                f"header declares {declared_n} nodes but edges reference id {max_id}")
        n = declared_n
    return build_graph(n, edges)


def _read_matrix_csv(path) -> DirectedGraph:
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                rows.append([float(cell) for cell in text.split(",")])
            except ValueError:
                raise ParseError(f"non-numeric matrix cell in {text!r}", lineno) from None
    n = len(rows)
    edges = []
    for i, row in enumerate(rows):
        if len(row) != n:
            raise ParseError(f"matrix is not square: row {i} has {len(row)} cells, expected {n}")
        for j, cell in enumerate(row):
            if cell != 0.0:
                edges.append((i, j))
    return build_graph(n, edges)
