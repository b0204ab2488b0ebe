"""Shared fixtures: the worked example block and independent oracles.

Oracle helpers here are deliberately naive (plain loops, exhaustive
enumeration) so they share no code path with the implementations they
check.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

# The worked single-block example: a cmov-bearing block whose data moves
# chain ecx, eax and the stack slot rbp-44.
SAMPLE_BLOCK_LISTING = """\
0: mov ecx, rbp - 44
1: mov eax, ecx
2: and eax, 400
3: or eax, 140
4: or ecx, 1
5: cmp rip + 170, 0
6: cmovne ecx, eax
7: mov rbp - 44, ecx
8: mov rip + 180, 0
9: jmp 0x100000000
"""


@pytest.fixture
def sample_listing() -> str:
    return SAMPLE_BLOCK_LISTING


def brute_force_assortativity(g) -> float | None:
    """Pearson over the doubled edge-end degree list, plain loops."""
    deg = [0] * g.n
    pairs = [(int(u), int(v)) for u, v in g.undirected_pairs()]
    for u, v in pairs:
        deg[u] += 1
        deg[v] += 1
    xs: list[float] = []
    ys: list[float] = []
    for u, v in pairs:
        xs.append(float(deg[u]))
        ys.append(float(deg[v]))
        xs.append(float(deg[v]))
        ys.append(float(deg[u]))
    if not xs:
        return None
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    sxx = sum((a - mx) ** 2 for a in xs)
    syy = sum((b - my) ** 2 for b in ys)
    if sxx == 0.0 or syy == 0.0:
        return None
    return sxy / math.sqrt(sxx * syy)


def brute_force_k_cliques(g, k: int) -> int:
    """Count k-cliques by checking every k-subset of nodes."""
    adj = [set() for _ in range(g.n)]
    for u, v in g.undirected_pairs():
        adj[int(u)].add(int(v))
        adj[int(v)].add(int(u))
    count = 0
    for combo in itertools.combinations(range(g.n), k):
        if all(b in adj[a] for a, b in itertools.combinations(combo, 2)):
            count += 1
    return count


def brute_force_triangle_counts(g) -> np.ndarray:
    """Per-node triangle membership counts by subset enumeration."""
    counts = np.zeros(g.n, dtype=np.int64)
    adj = [set() for _ in range(g.n)]
    for u, v in g.undirected_pairs():
        adj[int(u)].add(int(v))
        adj[int(v)].add(int(u))
    for a, b, c in itertools.combinations(range(g.n), 3):
        if b in adj[a] and c in adj[a] and c in adj[b]:
            counts[a] += 1
            counts[b] += 1
            counts[c] += 1
    return counts
