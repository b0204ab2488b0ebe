"""Seeded generators for synthetic graphs and programs.

Used by the self-test, the test suite and the kernel benchmark. Every
generator is deterministic for a given seed.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from binet.graph import DirectedGraph, build_graph
from binet.powerlaw import sample_discrete_power_law


def random_directed_graph(n: int, n_edges: int, seed: Optional[int] = None) -> DirectedGraph:
    """Uniform random directed graph, duplicates collapsed, no self-loops."""
    rng = np.random.default_rng(seed)
    if n < 2 or n_edges == 0:
        return build_graph(n, [])
    u = rng.integers(0, n, size=n_edges)
    v = rng.integers(0, n, size=n_edges)
    keep = u != v
    return build_graph(n, np.stack([u[keep], v[keep]], axis=1))


def erdos_renyi(n: int, p: float, seed: Optional[int] = None) -> DirectedGraph:
    """G(n, p) with undirected semantics: each pair {u, v} kept with prob p.

    Edges are stored once, low id first; use the undirected view for
    metrics.
    """
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, k=1)
    mask = rng.random(iu.shape[0]) < p
    edges = np.stack([iu[mask], iv[mask]], axis=1)
    return build_graph(n, edges)


def watts_strogatz(n: int, k: int, p: float, seed: Optional[int] = None) -> DirectedGraph:
    """Ring lattice with k nearest neighbors, each edge rewired with prob p.

    For each node, the k/2 clockwise lattice edges are rewired to a
    uniformly random non-duplicate target with probability p.
    """
    if k % 2 or k <= 0:
        raise ValueError("k must be a positive even number")
    if k >= n:
        raise ValueError("k must be smaller than n")
    rng = np.random.default_rng(seed)
    neighbors: list[set[int]] = [set() for _ in range(n)]
    for u in range(n):
        for offset in range(1, k // 2 + 1):
            v = (u + offset) % n
            neighbors[u].add(v)
            neighbors[v].add(u)
    for u in range(n):
        for offset in range(1, k // 2 + 1):
            v = (u + offset) % n
            if rng.random() >= p:
                continue
            w = int(rng.integers(0, n))
            attempts = 0
            while (w == u or w in neighbors[u]) and attempts < 8 * n:
                w = int(rng.integers(0, n))
                attempts += 1
            if w == u or w in neighbors[u]:
                continue  # node saturated; keep the lattice edge
            if v in neighbors[u]:
                neighbors[u].discard(v)
                neighbors[v].discard(u)
                neighbors[u].add(w)
                neighbors[w].add(u)
    edges = [(u, v) for u in range(n) for v in neighbors[u] if u < v]
    return build_graph(n, edges)


def synthetic_program(
    n_blocks: int,
    seed: Optional[int] = None,
    size_exponent: float = 2.2,
    max_block_moves: int = 400,
) -> str:
    """Canonical-syntax listing with power-law distributed block sizes.

    Each block is a chain of moves through fresh memory slots followed
    by a jump to the next block, so block i's dependency graph is a path
    whose size tracks the drawn block size.
    """
    sizes = sample_discrete_power_law(size_exponent, n_blocks, k_min=1, seed=seed)
    sizes = np.minimum(sizes, max_block_moves)
    lines: list[str] = []
    addr = 0
    starts = np.concatenate([[0], np.cumsum(sizes + 1)])  # moves plus the jump
    for b, moves in enumerate(sizes):
        for j in range(int(moves)):
            lines.append(f"{addr:x}: mov rbp - {8 * (b % 7) + 8 * j + 8}, "
                         f"rbp - {8 * (b % 7) + 8 * j + 16}")
            addr += 1
        target = int(starts[b + 1]) if b + 1 < n_blocks else 0
        lines.append(f"{addr:x}: jmp {target:#x}")
        addr += 1
    return "\n".join(lines) + "\n"
