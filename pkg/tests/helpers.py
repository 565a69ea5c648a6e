"""Shared generators and slow reference predicates for the test suite."""

from __future__ import annotations

import random
from itertools import combinations
from math import gcd

from wciq.complexes import Complex
from wciq.oracles import brute_force_representable


def random_weights(rng: random.Random, *, max_len: int = 8,
                   max_value: int = 30) -> tuple[int, ...]:
    n = rng.randint(1, max_len)
    return tuple(rng.randint(1, max_value) for _ in range(n))


def random_complex(rng: random.Random, *, max_vertices: int = 8,
                   max_facets: int = 20) -> Complex:
    n = rng.randint(1, max_vertices)
    k = rng.randint(1, max_facets)
    facets = []
    for _ in range(k):
        size = rng.randint(1, n)
        facets.append(rng.sample(range(n), size))
    return Complex.from_facets(n, facets)


def subset_gcd(weights, subset) -> int:
    vals = [weights[i] for i in subset]
    g = 0
    for v in vals:
        g = gcd(g, v)
    return g


def all_faces_by_definition(weights, predicate):
    """Every index subset satisfying a downward-closed predicate, as a
    set of frozensets; the semantic ground truth for complex builders."""
    n = len(weights)
    out = set()
    for r in range(1, n + 1):
        for combo in combinations(range(n), r):
            if predicate(combo):
                out.add(frozenset(combo))
    return out


def faces_of(cx: Complex) -> set[frozenset[int]]:
    out: set[frozenset[int]] = set()
    for f in cx.facets:
        members = sorted(f)
        for r in range(1, len(members) + 1):
            for combo in combinations(members, r):
                out.add(frozenset(combo))
    return out


def brute_G(weights, degrees, subset) -> frozenset[int]:
    """1-based degree indices representable over the subset's weights."""
    vals = [weights[i] for i in subset]
    return frozenset(
        j for j, d in enumerate(degrees, 1)
        if brute_force_representable(d, vals))


def coprime_instance(rng: random.Random, t: int | None = None):
    """Random pair with pairwise coprime heavy values and one planted
    composite degree per heavy copy, so the strong construction is in
    scope: regular, pair-trivial, no linear cone, Fano index t."""
    values = rng.sample([2, 3, 5, 7, 11], rng.randint(2, 4))
    heavy: list[int] = []
    degrees: list[int] = []
    for v in values:
        m = rng.randint(1, 3)
        heavy.extend([v] * m)
        degrees.extend(v * rng.randint(2, 5) for _ in range(m))
    if t is None:
        t = rng.randint(1, 3)
    ones = sum(degrees) - sum(heavy) + t
    return tuple([1] * ones + heavy), tuple(degrees)
