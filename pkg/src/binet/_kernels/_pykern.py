"""Pure-Python kernel fallback. Same contracts as the compiled module.

Inputs are CSR arrays: ``indptr`` int64 of length n+1, ``indices`` int32
with neighbor lists sorted ascending. ``triangle_counts`` expects the
full symmetric adjacency without self-loops; ``count_cliques`` expects a
forward-oriented (acyclic) adjacency, normally in degeneracy order.
"""

from __future__ import annotations

import numpy as np


def triangle_counts(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Number of triangles through each node."""
    n = indptr.shape[0] - 1
    t = np.zeros(n, dtype=np.int64)
    rows = [indices[indptr[u]:indptr[u + 1]] for u in range(n)]
    sets = [set(row.tolist()) for row in rows]
    for u in range(n):
        for v in rows[u]:
            v = int(v)
            if v <= u:
                continue
            for w in sets[u] & sets[v]:
                if w > v:
                    t[u] += 1
                    t[v] += 1
                    t[w] += 1
    return t


def count_cliques(indptr: np.ndarray, indices: np.ndarray, k: int) -> int:
    """Total number of k-vertex cliques, given a forward-oriented CSR.

    Every clique's vertices form a chain in the orientation, so each is
    enumerated exactly once by descending through intersections of
    forward-neighbor lists.
    """
    n = indptr.shape[0] - 1
    if k == 1:
        return n
    if k == 2:
        return int(indices.shape[0])
    fwd = [indices[indptr[u]:indptr[u + 1]] for u in range(n)]
    total = 0

    def descend(cand: np.ndarray, depth: int) -> None:
        nonlocal total
        if depth == k - 1:
            total += int(cand.size)
            return
        for v in cand:
            sub = np.intersect1d(cand, fwd[int(v)], assume_unique=True)
            if sub.size >= k - depth - 1:
                descend(sub, depth + 1)

    for u in range(n):
        cand = fwd[u]
        if cand.size >= k - 1:
            descend(cand, 1)
    return total
