"""Slow reference implementations used to cross-check the fast paths.

Everything here trades time for obviousness: plain coefficient
enumeration instead of the bitset closure, full subset sweeps instead of
value-class reductions, and per-index part assignment instead of the
multiplicity search. The tie-breaks mirror the fast implementations so
witnesses can be compared verbatim.
"""

from __future__ import annotations

from itertools import combinations
from math import gcd

from wciq.arith import DegreesLike, WeightsLike, as_degrees, as_weights
from wciq.errors import ResourceLimitError

DEFAULT_ORACLE_BUDGET = 2_000_000


def brute_force_representable(d: int, weights) -> bool:
    """Is d a non-negative integer combination of the weights?

    Exhaustive search over coefficient vectors, one distinct value at a
    time, largest first.
    """
    vals = sorted({a for a in weights if a > 0}, reverse=True)

    def rec(left: int, at: int) -> bool:
        if left == 0:
            return True
        if at == len(vals):
            return False
        v = vals[at]
        for c in range(left // v, -1, -1):
            if rec(left - c * v, at + 1):
                return True
        return False

    return rec(d, 0) if d >= 0 else False


def naive_strictly_regular(weights: WeightsLike,
                           degrees: DegreesLike) -> tuple[bool, tuple[int, ...] | None]:
    """Subset-sweep strict regularity with brute-force representability.

    Sweeps every subset of the heavy indices in (cardinality, lex) order,
    so a returned witness is the smallest and lexicographically least
    violating subset, matching the fast path.
    """
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    heavy = wt.heavy()
    for r in range(1, len(heavy) + 1):
        for combo in combinations(heavy, r):
            vals = [wt[i] for i in combo]
            g = gcd(*vals) if len(vals) > 1 else vals[0]
            if g <= 1:
                continue
            good = sum(
                1 for j in range(1, len(dg) + 1)
                if brute_force_representable(dg.degree(j), vals))
            if good < r:
                return False, combo
    return True, None


def naive_partition_exists(weights: WeightsLike, degrees: DegreesLike,
                           mode: str = "strong", *,
                           budget: int = DEFAULT_ORACLE_BUDGET) -> bool:
    """Partition existence by assigning every heavy index to a part.

    Enumerates all (c+1)^h placements of the h heavy indices over the
    parts, then fills each degree's remaining deficit with weight-one
    indices. Deliberately ignorant of the multiplicity structure the
    fast search exploits.
    """
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    c = len(dg)
    heavy = wt.heavy()
    n_ones = len(wt.ones())
    leaves = 0

    def leaf_ok(parts: list[int]) -> bool:
        deficits = []
        for j in range(1, c + 1):
            s = sum(wt[i] for i, p in zip(heavy, parts) if p == j)
            r = dg.degree(j) - s
            if r < 0:
                return False
            deficits.append(r)
        if sum(deficits) > n_ones:
            return False
        leftover = n_ones - sum(deficits)
        if mode == "nice" and leftover < 1:
            return False
        if mode == "strong":
            if any(p == 0 for p in parts):
                return False
            if any(dg.degree(p) % wt[i] != 0
                   for i, p in zip(heavy, parts) if p != 0):
                return False
        return True

    def rec(at: int, parts: list[int]) -> bool:
        nonlocal leaves
        if at == len(heavy):
            leaves += 1
            if leaves > budget:
                raise ResourceLimitError(
                    f"oracle partition enumeration exceeded {budget} leaves")
            return leaf_ok(parts)
        return any(rec(at + 1, parts + [p]) for p in range(c + 1))

    return rec(0, [])
