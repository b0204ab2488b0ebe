"""Published reference measurements used by the self-test.

The CFG table lists per-sample (N, L, k_max) with the reported diameter
predictors k1 = k_max/ln N and k2 = ln N/ln(2L/N); the DDG table does
the same for the five largest per-block dependency graphs of one sample.
The self-test re-derives both predictors from each row's raw counts and
checks them against the printed values, plus a seeded spot-check of the
assortativity code against a brute-force Pearson.

Known quirks, asserted as such rather than papered over:
  * DDG block 527 prints k1 = 2.466 but 9/ln(40) = 2.440; every other
    row agrees to three decimals, so the printed value is a typo.
  * The DDG table's k2 column does not follow ln N/ln(2L/N) under any
    reading of <K> we could reproduce; k2 is therefore only checked on
    the CFG table.
  * One CFG row (Zeus part A) has k2 off by 0.008; the tolerance below
    admits up to two such rows.
"""

from __future__ import annotations

import math
import sys
from typing import TextIO

# sample, N, L, k_max, printed k1, printed k2, pearson, gamma
CFG_REFERENCE_ROWS: list[tuple[str, int, int, int, float, float, float, float]] = [
    ("Win32_APT28_SekoiaRootkit", 1495, 2779, 246, 33.653, 5.566, -0.098, 6.204),
    ("Win32_AgentTesla", 21732, 18394, 578, 57.877, 18.971, -0.057, 11.539),
    ("Win32_Avatar", 928, 1669, 23, 3.366, 5.337, -0.012, 5.999),
    ("Win32_BigBangA", 57344, 120007, 2308, 210.644, 7.653, -0.042, 2.211),
    ("Win32_BigBangB", 46937, 97470, 2288, 212.707, 7.554, -0.041, 2.281),
    ("Win32_BigBangC", 71109, 155022, 1153, 103.204, 7.587, -0.054, 2.250),
    ("Win32_Boaxxe.BB", 2507, 5129, 118, 15.076, 5.555, -0.073, 3.618),
    ("Win32_Caphaw_ShylockA", 1929, 3450, 76, 10.046, 5.935, -0.046, 5.934),
    ("Win32_Caphaw_ShylockB", 1713, 3336, 45, 6.043, 5.476, 0.038, 8.291),
    ("Win32_Cridex", 1155, 1386, 58, 8.224, 8.054, -0.040, 6.713),
    ("Zeus_Gameover_2014_partA", 22169, 42845, 712, 71.154, 7.409, -0.033, 2.595),
    ("Zeus_Gameover_2014_partB", 20488, 39836, 599, 60.336, 7.310, -0.039, 2.544),
]

# block index, N, L, k_max, printed k1, printed k2, pearson, gamma
DDG_REFERENCE_ROWS: list[tuple[int, int, int, int, float, float, float, float]] = [
    (390, 48, 32, 3, 0.774, 2.904, -0.153, 18.264),
    (527, 40, 30, 9, 2.466, 2.397, -0.416, 4.538),
    (263, 29, 26, 4, 1.187, 1.878, 0.105, 3.281),
    (358, 32, 25, 5, 1.442, 2.218, -0.577, 4.279),
    (526, 21, 13, 4, 1.313, 2.459, -0.326, 8.574),
]

#: Block whose printed k1 disagrees with its own (N, k_max).
DDG_K1_TYPO_BLOCK = 527
DDG_K1_TYPO_PRINTED = 2.466
DDG_K1_TYPO_RECOMPUTED = 2.440

#: Reported clique census of the Zeus Gameover (Feb 2014) control flow
#: graph; the underlying graph is not redistributable, so these are
#: reference values only, not a self-test target.
ZEUS_CLIQUE_CENSUS = {3: 3113, 4: 31, 6: 1}

K_TOLERANCE = 0.005
MAX_K2_MISSES = 2


def run_selftest(out: TextIO = sys.stdout, seed: int = 0) -> bool:
    """Re-derive the reference tables; print one PASS/FAIL line per check.

    Returns True when every check passes. ``seed`` drives the
    assortativity spot-check graphs.
    """
    from binet.generate import random_directed_graph
    from binet.metrics import assortativity, diameter_predictors

    ok = True

    def report(name: str, passed: bool, detail: str = "") -> None:
        nonlocal ok
        ok = ok and passed
        suffix = f"  ({detail})" if detail else ""
        out.write(f"{'PASS' if passed else 'FAIL'}  {name}{suffix}\n")

    k1_misses = []
    k2_misses = []
    for name, n, l, k_max, k1_ref, k2_ref, _r, _g in CFG_REFERENCE_ROWS:
        k1, k2 = diameter_predictors(n, l, k_max)
        if abs(k1 - k1_ref) > K_TOLERANCE:
            k1_misses.append(name)
        if k2 is None or abs(k2 - k2_ref) > K_TOLERANCE:
            k2_misses.append(name)
    report("cfg table k1 within 0.005 on all rows", not k1_misses, ", ".join(k1_misses))
    report(f"cfg table k2 within 0.005 on >= {len(CFG_REFERENCE_ROWS) - MAX_K2_MISSES} rows",
           len(k2_misses) <= MAX_K2_MISSES, ", ".join(k2_misses))

    ddg_misses = []
    for block, n, l, k_max, k1_ref, _k2, _r, _g in DDG_REFERENCE_ROWS:
        k1, _ = diameter_predictors(n, l, k_max)
        if block == DDG_K1_TYPO_BLOCK:
            typo_confirmed = (abs(k1 - DDG_K1_TYPO_RECOMPUTED) <= K_TOLERANCE
                              and abs(k1 - DDG_K1_TYPO_PRINTED) > K_TOLERANCE)
            report(f"ddg block {block} printed k1 {DDG_K1_TYPO_PRINTED} is a typo "
                   f"(recomputed {DDG_K1_TYPO_RECOMPUTED})", typo_confirmed, f"k1={k1:.3f}")
            continue
        if abs(k1 - k1_ref) > K_TOLERANCE:
            ddg_misses.append(str(block))
    report("ddg table k1 within 0.005 on remaining rows", not ddg_misses, ", ".join(ddg_misses))

    mismatches = 0
    for i in range(5):
        g = random_directed_graph(30, 70, seed=seed + i)
        r = assortativity(g)
        oracle = _pearson_over_edge_ends(g)
        if (r is None) != (oracle is None):
            mismatches += 1
        elif r is not None and abs(r - oracle) > 1e-9:
            mismatches += 1
    report("assortativity matches brute-force Pearson on seeded graphs", mismatches == 0)

    return ok


def _pearson_over_edge_ends(g) -> float | None:
    """Plain-loop Pearson over the doubled edge-end degree pairs."""
    deg = g.undirected_degrees()
    xs: list[float] = []
    ys: list[float] = []
    for u, v in g.undirected_pairs():
        du, dv = float(deg[int(u)]), float(deg[int(v)])
        xs.extend((du, dv))
        ys.extend((dv, du))
    if not xs:
        return None
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxy = sum((a - mx) * (b - my) for a, b in zip(xs, ys))
    sxx = sum((a - mx) ** 2 for a in xs)
    syy = sum((b - my) ** 2 for b in ys)
    if sxx == 0 or syy == 0:
        return None
    return sxy / math.sqrt(sxx * syy)
