"""Exact bottleneck distance between persistence diagrams."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .diagrams import PersistenceDiagram

DIAGONAL = None


@dataclass
class Matching:
    """Optimal matching; ``pairs`` hold indices into each diagram's ``points`` or DIAGONAL."""

    pairs: list = field(default_factory=list)
    cost: float = 0.0


def _linf(p, q) -> float:
    # coordinates equal (including matching infinities) contribute 0
    db = 0.0 if p[0] == q[0] else abs(p[0] - q[0])
    dd = 0.0 if p[1] == q[1] else abs(p[1] - q[1])
    return max(db, dd)


def _diag(p) -> float:
    return (p[1] - p[0]) / 2


def _kind(b: float, d: float) -> tuple:
    return (math.isinf(b), math.isinf(d))


def _match_sorted(a_idx, b_idx, a_vals, b_vals):
    """Bottleneck-optimal matching of equal-size 1-d sets: sort both."""
    oa = sorted(a_idx, key=lambda i: a_vals[i])
    ob = sorted(b_idx, key=lambda j: b_vals[j])
    cost = max((abs(a_vals[i] - b_vals[j]) for i, j in zip(oa, ob)), default=0.0)
    return list(zip(oa, ob)), cost


def _finite_matching(A: np.ndarray, B: np.ndarray):
    """Bottleneck matching of two finite point sets (rows are (birth, death)).

    Returns (cost, pairs) with pairs indexing rows or DIAGONAL.
    """
    n, m = len(A), len(B)
    if n == 0 and m == 0:
        return 0.0, []
    size = n + m
    cost = np.full((size, size), np.inf)
    # rows: A then diagonal copies of B; columns: B then diagonal copies of A
    if n and m:
        cost[:n, :m] = np.maximum(
            np.abs(A[:, None, 0] - B[None, :, 0]), np.abs(A[:, None, 1] - B[None, :, 1])
        )
    for i in range(n):
        cost[i, m + i] = (A[i, 1] - A[i, 0]) / 2
    for j in range(m):
        cost[n + j, j] = (B[j, 1] - B[j, 0]) / 2
    cost[n:, m:] = 0.0

    candidates = np.unique(cost[np.isfinite(cost)])

    def feasible(t):
        graph = csr_matrix(cost <= t)
        match = maximum_bipartite_matching(graph, perm_type="column")
        return (match >= 0).all(), match

    lo, hi = 0, len(candidates) - 1
    ok, best = feasible(candidates[hi])
    assert ok
    while lo < hi:
        mid = (lo + hi) // 2
        ok, match = feasible(candidates[mid])
        if ok:
            hi, best = mid, match
        else:
            lo = mid + 1
    pairs = []
    for row, col in enumerate(best):
        if row < n:
            pairs.append((row, col if col < m else DIAGONAL))
        elif col < m:
            pairs.append((DIAGONAL, col))
    return float(candidates[lo]), pairs


def bottleneck_matching(d1: PersistenceDiagram, d2: PersistenceDiagram, dim=None) -> Matching:
    """Optimal bottleneck matching, dimension by dimension.

    Points with an infinite coordinate only match points of the same kind;
    a count mismatch gives cost ``inf``.
    """
    p1, p2 = d1.points, d2.points
    dims = sorted({p[0] for p in p1} | {p[0] for p in p2}) if dim is None else [dim]
    result = Matching()
    for k in dims:
        groups1, groups2 = {}, {}
        for i, (kk, b, d) in enumerate(p1):
            if kk == k:
                groups1.setdefault(_kind(b, d), []).append(i)
        for j, (kk, b, d) in enumerate(p2):
            if kk == k:
                groups2.setdefault(_kind(b, d), []).append(j)
        for kind in set(groups1) | set(groups2):
            g1, g2 = groups1.get(kind, []), groups2.get(kind, [])
            if kind == (False, False):
                A = np.array([p1[i][1:] for i in g1], dtype=float).reshape(-1, 2)
                B = np.array([p2[j][1:] for j in g2], dtype=float).reshape(-1, 2)
                c, pairs = _finite_matching(A, B)
                result.pairs += [
                    (DIAGONAL if a is DIAGONAL else g1[a], DIAGONAL if b is DIAGONAL else g2[b])
                    for a, b in pairs
                ]
            elif kind == (True, True):
                # (-inf, inf): nothing finite to compare
                c = 0.0 if len(g1) == len(g2) else math.inf
                result.pairs += list(zip(g1, g2))
            elif len(g1) != len(g2):
                c = math.inf
            else:
                coord = 2 if kind == (True, False) else 1
                pairs, c = _match_sorted(
                    g1, g2, {i: p1[i][coord] for i in g1}, {j: p2[j][coord] for j in g2}
                )
                result.pairs += pairs
            result.cost = max(result.cost, c)
    return result


def bottleneck_distance(d1: PersistenceDiagram, d2: PersistenceDiagram, dim=None) -> float:
    """Exact bottleneck distance (max over dimensions unless ``dim`` is given)."""
    return bottleneck_matching(d1, d2, dim).cost


def bottleneck_bruteforce(d1: PersistenceDiagram, d2: PersistenceDiagram) -> float:
    """Reference value by enumerating every partial matching. Tiny diagrams only."""
    worst = 0.0
    for k in set(d1.dims) | set(d2.dims):
        a = [p[1:] for p in d1.points if p[0] == k]
        b = [p[1:] for p in d2.points if p[0] == k]
        best = math.inf
        for size in range(min(len(a), len(b)) + 1):
            for sa in itertools.combinations(range(len(a)), size):
                for sb in itertools.permutations(range(len(b)), size):
                    c = 0.0
                    for i, j in zip(sa, sb):
                        c = max(c, _linf(a[i], b[j]))
                    for i in set(range(len(a))) - set(sa):
                        c = max(c, _diag(a[i]))
                    for j in set(range(len(b))) - set(sb):
                        c = max(c, _diag(b[j]))
                    best = min(best, c)
        worst = max(worst, best)
    return worst


def interleaving_certificate(d1, d2, claimed_bound: float, tol: float = 1e-9) -> bool:
    """True iff the diagrams are within ``claimed_bound`` in bottleneck distance."""
    return bottleneck_distance(d1, d2) <= claimed_bound + tol
