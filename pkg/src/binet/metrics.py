"""Structural network metrics: sizes, degrees, diameter predictors,
assortativity, clustering, clique census, components, distributions.

Classification always runs on the undirected view; the in/out maxima of
the directed graph ride along in a side section of the record.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from binet import _kernels
from binet.graph import DirectedGraph
from binet.powerlaw import AllDegreesEqual, InsufficientData, fit_power_law


class DegenerateSize(ValueError):
    """The graph is too small for the requested quantity."""


class EmptyGraph(ValueError):
    """The undirected view has no edges."""


@dataclass
class NetworkMetrics:
    """One record per graph; optional fields are None when undefined."""

    n: int
    l: int
    k_max: int
    mean_degree: float
    components: int
    kin_max: int
    kout_max: int
    k1: Optional[float] = None
    k2: Optional[float] = None
    pearson_r: Optional[float] = None
    gamma: Optional[float] = None
    gamma_method: Optional[str] = None
    gamma_goodness: Optional[float] = None
    k_min: Optional[int] = None
    clustering_global: Optional[float] = None
    clustering_avg_local: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "N": self.n,
            "L": self.l,
            "k_max": self.k_max,
            "mean_degree": self.mean_degree,
            "k1": self.k1,
            "k2": self.k2,
            "pearson_r": self.pearson_r,
            "gamma": self.gamma,
            "gamma_method": self.gamma_method,
            "gamma_goodness": self.gamma_goodness,
            "k_min": self.k_min,
            "clustering_global": self.clustering_global,
            "clustering_avg_local": self.clustering_avg_local,
            "components": self.components,
            "directed": {"kin_max": self.kin_max, "kout_max": self.kout_max},
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "NetworkMetrics":
        directed = doc.get("directed", {})
        return cls(
            n=doc["N"], l=doc["L"], k_max=doc["k_max"],
            mean_degree=doc["mean_degree"], components=doc["components"],
            kin_max=directed.get("kin_max", 0), kout_max=directed.get("kout_max", 0),
            k1=doc.get("k1"), k2=doc.get("k2"), pearson_r=doc.get("pearson_r"),
            gamma=doc.get("gamma"), gamma_method=doc.get("gamma_method"),
            gamma_goodness=doc.get("gamma_goodness"), k_min=doc.get("k_min"),
            clustering_global=doc.get("clustering_global"),
            clustering_avg_local=doc.get("clustering_avg_local"),
        )


def basic_metrics(g: DirectedGraph, mode: str = "undirected") -> NetworkMetrics:
    """Size, links, maximum degree, mean degree and component count.

    mode picks what L and k_max refer to; mean degree and components
    always come from the undirected view.
    """
    if g.n < 1:
        raise DegenerateSize("graph has no nodes")
    if mode not in ("undirected", "directed"):
        raise ValueError(f"unknown metrics mode {mode!r}")
    und_l = g.undirected_edge_count
    if mode == "undirected":
        l = und_l
        k_max = int(g.undirected_degrees().max()) if g.n else 0
    else:
        l = g.num_edges
        k_max = int(g.total_degrees().max()) if g.n else 0
    return NetworkMetrics(
        n=g.n,
        l=l,
        k_max=k_max,
        mean_degree=2.0 * und_l / g.n,
        components=connected_components(g),
        kin_max=int(g.in_degrees().max()) if g.n else 0,
        kout_max=int(g.out_degrees().max()) if g.n else 0,
    )


def diameter_predictors(n: int, l: int, k_max: int) -> tuple[float, Optional[float]]:
    """The two diameter predictors (k1, k2) from a graph's (N, L, k_max).

    k1 = k_max / ln N. k2 = ln N / ln(2L/N), None when mean degree
    2L/N <= 1. Raises DegenerateSize for N < 2.
    """
    if n < 2:
        raise DegenerateSize(f"diameter predictors need N >= 2, got {n}")
    log_n = math.log(n)
    k1 = k_max / log_n
    mean_degree = 2.0 * l / n
    k2 = log_n / math.log(mean_degree) if mean_degree > 1.0 else None
    return k1, k2


def assortativity(g: DirectedGraph) -> Optional[float]:
    """Pearson correlation of degrees at the two ends of every edge.

    Each undirected edge contributes both (du, dv) and (dv, du), the
    standard degree-assortativity convention. Returns None when the
    endpoint degrees have zero variance (regular graphs); raises
    EmptyGraph when the undirected view has no edges. Self-loops never
    participate.
    """
    pairs = g.undirected_pairs()
    if pairs.shape[0] == 0:
        raise EmptyGraph("assortativity needs at least one undirected edge")
    deg = g.undirected_degrees().astype(np.float64)
    du = deg[pairs[:, 0]]
    dv = deg[pairs[:, 1]]
    x = np.concatenate([du, dv])
    y = np.concatenate([dv, du])
    dx = x - x.mean()
    dy = y - y.mean()
    denom = math.sqrt(float(np.dot(dx, dx)) * float(np.dot(dy, dy)))
    if denom == 0.0:
        return None
    return float(np.dot(dx, dy)) / denom


def clustering(g: DirectedGraph) -> tuple[float, float]:
    """(global transitivity, average local clustering) of the undirected view.

    Global is 3 x triangles over connected triples (0 when no triples);
    nodes of degree < 2 contribute 0 to the local average.
    """
    if g.n == 0:
        return 0.0, 0.0
    indptr, indices = g.undirected_csr()
    t = _kernels.triangle_counts(indptr, indices)
    deg = g.undirected_degrees()
    triples = int((deg * (deg - 1) // 2).sum())
    triangles = int(t.sum()) // 3
    global_c = (3.0 * triangles / triples) if triples else 0.0
    mask = deg >= 2
    local = np.zeros(g.n, dtype=np.float64)
    local[mask] = 2.0 * t[mask] / (deg[mask] * (deg[mask] - 1.0))
    return global_c, float(local.mean())


def connected_components(g: DirectedGraph) -> int:
    """Number of weakly connected components (undirected)."""
    n = g.n
    parent = np.arange(n, dtype=np.int64)

    def find(a: int) -> int:
        root = a
        while parent[root] != root:
            root = parent[root]
        while parent[a] != root:
            parent[a], a = root, int(parent[a])
        return root

    for u, v in g.undirected_pairs():
        ru, rv = find(int(u)), find(int(v))
        if ru != rv:
            parent[ru] = rv
    return len({find(i) for i in range(n)})


def degree_histogram(g: DirectedGraph) -> dict[int, int]:
    """Undirected degree -> node count; counts sum to N."""
    deg = g.undirected_degrees()
    values, counts = np.unique(deg, return_counts=True)
    return {int(d): int(c) for d, c in zip(values, counts)}


def degree_rank(g: DirectedGraph) -> list[tuple[int, int]]:
    """(rank, degree) pairs sorted by descending degree, rank from 1."""
    deg = np.sort(g.undirected_degrees())[::-1]
    return [(rank, int(d)) for rank, d in enumerate(deg, start=1)]


# -- clique census ------------------------------------------------------------


def _degeneracy_order(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Node removal order by repeatedly deleting a minimum-degree node."""
    n = indptr.shape[0] - 1
    deg = (indptr[1:] - indptr[:-1]).astype(np.int64)
    heap = [(int(deg[u]), u) for u in range(n)]
    heapq.heapify(heap)
    removed = np.zeros(n, dtype=bool)
    order = np.empty(n, dtype=np.int64)
    filled = 0
    while heap:
        d, u = heapq.heappop(heap)
        if removed[u] or d != deg[u]:
            continue  # stale entry
        removed[u] = True
        order[filled] = u
        filled += 1
        for v in indices[indptr[u]:indptr[u + 1]]:
            v = int(v)
            if not removed[v]:
                deg[v] -= 1
                heapq.heappush(heap, (int(deg[v]), v))
    return order


def _forward_csr(g: DirectedGraph) -> tuple[np.ndarray, np.ndarray]:
    """Orient each undirected edge from earlier to later in degeneracy order."""
    indptr, indices = g.undirected_csr()
    order = _degeneracy_order(indptr, indices)
    pos = np.empty(g.n, dtype=np.int64)
    pos[order] = np.arange(g.n)
    pairs = g.undirected_pairs()
    if pairs.shape[0] == 0:
        return np.zeros(g.n + 1, dtype=np.int64), np.empty(0, dtype=np.int32)
    a, b = pairs[:, 0], pairs[:, 1]
    earlier_a = pos[a] < pos[b]
    src = np.where(earlier_a, a, b)
    dst = np.where(earlier_a, b, a)
    sort = np.lexsort((dst, src))
    src, dst = src[sort], dst[sort]
    fwd_indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.add.at(fwd_indptr, src + 1, 1)
    np.cumsum(fwd_indptr, out=fwd_indptr)
    return fwd_indptr, dst.astype(np.int32)


def count_k_cliques(g: DirectedGraph, k: int) -> int:
    """Exact number of complete k-vertex subgraphs of the undirected view.

    Counts all k-cliques, not only maximal ones. Degeneracy ordering
    keeps the enumeration tractable on sparse graphs of CFG scale.
    """
    if k < 1:
        raise ValueError(f"clique size must be positive, got {k}")
    if k == 1:
        return g.n
    if k == 2:
        return g.undirected_edge_count
    fwd_indptr, fwd_indices = _forward_csr(g)
    return int(_kernels.count_cliques(fwd_indptr, fwd_indices, k))


# -- full record ---------------------------------------------------------------


def compute_metrics(
    g: DirectedGraph,
    mode: str = "undirected",
    gamma_method: str = "mle",
    k_min: Optional[int] = None,
) -> NetworkMetrics:
    """Fill a complete NetworkMetrics record for one graph.

    Undefined quantities (k1 on a single node, assortativity of a
    regular graph, gamma of a near-constant degree sequence) come back
    as None rather than NaN so serialized records stay clean.
    """
    m = basic_metrics(g, mode)
    und_l = g.undirected_edge_count
    und_kmax = int(g.undirected_degrees().max()) if g.n else 0
    if g.n >= 2:
        m.k1, m.k2 = diameter_predictors(g.n, und_l, und_kmax)
    try:
        m.pearson_r = assortativity(g)
    except EmptyGraph:
        m.pearson_r = None
    m.clustering_global, m.clustering_avg_local = clustering(g)
    try:
        fit = fit_power_law(g.undirected_degrees(), method=gamma_method, k_min=k_min)
        m.gamma = fit.gamma
        m.gamma_method = fit.method
        m.gamma_goodness = fit.goodness
        m.k_min = fit.k_min
    except (InsufficientData, AllDegreesEqual):
        pass
    return m
