"""Exhaustive blow-up budget oracle over a square window of even deltas.

Every triple (p, r, z) of non-negative counts has effect
    d13 = -8p - 4r + 6z,   d3 = 2p + 2r - 2z.
Writing z = p + r + j and r = p - 3j + k gives d3 = -2j and d13 = 2k, so
for each p the triples landing in the window are exactly the grid of
(j, k) with |2j|, |2k| <= half.  Sweeping p = 0..p_max visits every triple
with p <= p_max whose effect lies in the window; since any solution of total
T has p <= T, the minimum found is the true minimum whenever it is <= p_max.
"""

from __future__ import annotations

import numpy as np


def exhaustive_minimal_budgets(half: int = 200, p_max: int = 1000):
    """Arrays indexed by (d13 // 2 + half // 2, d3 // 2 + half // 2): min total, tie count, argmin p."""
    h = half // 2
    k = np.arange(-h, h + 1)[:, None]  # d13 = 2k
    j = -np.arange(-h, h + 1)[None, :]  # d3 = -2j
    big = np.iinfo(np.int64).max
    best = np.full((2 * h + 1, 2 * h + 1), big, dtype=np.int64)
    ties = np.zeros_like(best)
    best_p = np.full_like(best, -1)
    for p in range(p_max + 1):
        r = p - 3 * j + k
        z = p + r + j
        total = np.where((r >= 0) & (z >= 0), p + r + z, big)
        better = total < best
        same = (total == best) & (total != big)
        ties = np.where(better, 1, ties + same)
        best_p = np.where(better, p, best_p)
        best = np.minimum(best, total)
    return best, ties, best_p


def naive_minimal_budget(d13: int, d3: int, bound: int):
    """All (p, r, z) with p + r + z <= bound achieving the deltas, minimal total first."""
    hits = []
    for p in range(bound + 1):
        for r in range(bound + 1 - p):
            for z in range(bound + 1 - p - r):
                if -8 * p - 4 * r + 6 * z == d13 and 2 * p + 2 * r - 2 * z == d3:
                    hits.append((p + r + z, p, r, z))
    return sorted(hits)
