"""Regularity criteria on a weight tuple and a degree tuple.

Covers well-formedness of the weighted projective space, the linear-cone
test, strict regularity (every index set with a common divisor above 1 must
see at least as many representable degrees as it has members), and the
divisibility combinatorics of weight subsets:

* a subset is non-divisible when no member weight divides another;
* it is strongly non-divisible when no member weight divides the lcm of
  the pairwise gcds of its members (that lcm is 1 for singletons);
* the pair of complexes they span is trivial when the two families agree.

Strong non-divisibility implies non-divisibility, and both families are
closed under subsets, so each is represented by its maximal members. Both
are evaluated over the indices of weight above 1; weight-1 indices never
matter for divisibility obstructions, and the command line reports the
literal all-indices reading separately when it differs.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from wciq.arith import (
    DEFAULT_DP_CAP,
    DegreesLike,
    WeightsLike,
    as_degrees,
    as_weights,
    gcd_of,
    lcm_or_one,
    representable_degrees,
)
from wciq.complexes import Complex, maximal_members
from wciq.errors import InputError, InternalConsistencyError, ResourceLimitError

_VALUE_SUBSET_LIMIT = 20


@dataclass(frozen=True)
class RegularityReport:
    """Aggregate verdicts. Degree-dependent fields are None when no degree
    tuple was supplied."""

    well_formed: bool
    linear_cone: bool | None
    strictly_regular: bool | None
    violating_subset: tuple[int, ...] | None
    pair_trivial: bool
    nondivisible_facets: tuple[tuple[int, ...], ...]
    strongly_nondivisible_facets: tuple[tuple[int, ...], ...]


def is_wellformed_wps(weights: WeightsLike) -> bool:
    """Well-formedness: dropping any one weight leaves overall gcd 1.

    With a single weight the remaining collection is empty and its gcd is
    taken as 0, so length-1 tuples are never well-formed here.
    """
    wt = as_weights(weights)
    n = len(wt)
    for i in range(n):
        g = 0
        for j, a in enumerate(wt):
            if j != i:
                g = gcd(g, a)
        if g != 1:
            return False
    return True


def is_linear_cone(weights: WeightsLike, degrees: DegreesLike) -> bool:
    """Does some weight equal some degree?"""
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    return bool(set(wt) & set(dg))


def _validate_subset(wt, subset) -> tuple[int, ...]:
    idx = tuple(sorted(set(subset)))
    for i in idx:
        if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < len(wt):
            raise InputError(f"index {i!r} outside 0..{len(wt) - 1}")
    return idx


def is_non_divisible(weights: WeightsLike, subset) -> bool:
    """No member weight divides another member weight (distinct indices).

    Two indices carrying equal weights divide each other, so repeated
    values rule a subset out.
    """
    wt = as_weights(weights)
    idx = _validate_subset(wt, subset)
    for i, j in combinations(idx, 2):
        if wt[j] % wt[i] == 0 or wt[i] % wt[j] == 0:
            return False
    return True


def is_strongly_non_divisible(weights: WeightsLike, subset) -> bool:
    """No member weight divides the lcm of the pairwise gcds of members.

    The empty lcm is 1, so a singleton passes exactly when its weight is
    above 1, and the empty set passes vacuously.
    """
    wt = as_weights(weights)
    idx = _validate_subset(wt, subset)
    pair_gcds = [gcd(wt[i], wt[j]) for i, j in combinations(idx, 2)]
    bound = lcm_or_one(pair_gcds)
    return all(bound % wt[k] != 0 for k in idx)


def nondivisible_complex(weights: WeightsLike) -> Complex:
    """Facets of the non-divisible subsets over indices of weight above 1."""
    wt = as_weights(weights)
    facets = maximal_members(wt.heavy(), lambda s: is_non_divisible(wt, s))
    return Complex.from_facets(len(wt), facets)


def strongly_nondivisible_complex(weights: WeightsLike) -> Complex:
    """Facets of the strongly non-divisible subsets over indices of weight
    above 1."""
    wt = as_weights(weights)
    facets = maximal_members(wt.heavy(), lambda s: is_strongly_non_divisible(wt, s))
    return Complex.from_facets(len(wt), facets)


def pair_nontriviality_witness(weights: WeightsLike) -> frozenset[int] | None:
    """A smallest non-divisible face that is not strongly non-divisible,
    or None when the two families agree. Every strongly non-divisible set
    is non-divisible, so the families differ exactly when such a face
    exists; faces come in (cardinality, lex) order, making the witness
    canonical."""
    wt = as_weights(weights)
    nd = nondivisible_complex(wt)
    for face in nd.faces() or []:
        if not is_strongly_non_divisible(wt, face):
            return frozenset(face)
    return None


def pair_trivial_all_indices(weights: WeightsLike) -> bool:
    """Literal reading over all indices, weight-1 ones included. A weight-1
    singleton is non-divisible but not strongly non-divisible, so any
    weight-1 index makes this reading non-trivial."""
    wt = as_weights(weights)
    verts = range(len(wt))
    a = maximal_members(verts, lambda s: is_non_divisible(wt, s))
    b = maximal_members(verts, lambda s: is_strongly_non_divisible(wt, s))
    return a == b


def is_strictly_regular(weights: WeightsLike, degrees: DegreesLike, *,
                        dp_cap: int = DEFAULT_DP_CAP):
    """Strict regularity with a canonical witness on failure.

    Returns (True, None) or (False, witness). Representable degree counts
    depend only on the set of distinct weight values, so the search runs
    over value subsets with gcd above 1 and compares against the full
    index multiplicity of each value set. On failure the witness is the
    minimal-cardinality, then lexicographically least, violating index
    subset.
    """
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    values = wt.heavy_values()
    if len(values) > _VALUE_SUBSET_LIMIT:
        raise ResourceLimitError(
            f"strict regularity over {len(values)} distinct values exceeds "
            f"the supported scale ({_VALUE_SUBSET_LIMIT})")
    g_cache: dict[frozenset[int], frozenset[int]] = {}

    def good_degrees(valset: frozenset[int]) -> frozenset[int]:
        if valset not in g_cache:
            g_cache[valset] = representable_degrees(valset, dg, dp_cap=dp_cap)
        return g_cache[valset]

    failing: list[tuple[int, int]] = []
    for r in range(1, len(values) + 1):
        for vs in combinations(values, r):
            if gcd_of(vs) == 1:
                continue
            count = sum(len(wt.indices_of(v)) for v in vs)
            ng = len(good_degrees(frozenset(vs)))
            if ng < count:
                failing.append((r, ng))
    if not failing:
        return True, None
    min_size = min(max(r, ng + 1) for r, ng in failing)
    for idx in combinations(wt.heavy(), min_size):
        vs = frozenset(wt[i] for i in idx)
        if gcd_of(vs) == 1:
            continue
        if len(good_degrees(vs)) < min_size:
            return False, tuple(idx)
    raise InternalConsistencyError(
        "value-level violation found but no index witness materialized")


def pair_is_trivial(weights: WeightsLike, degrees: DegreesLike | None = None, *,
                    dp_cap: int = DEFAULT_DP_CAP) -> RegularityReport:
    """Full regularity report for a weight tuple, degree-aware when a
    degree tuple is supplied."""
    wt = as_weights(weights)
    nd = nondivisible_complex(wt)
    snd = strongly_nondivisible_complex(wt)
    trivial = nd.facets == snd.facets
    linear_cone: bool | None = None
    regular: bool | None = None
    witness: tuple[int, ...] | None = None
    if degrees is not None:
        dg = as_degrees(degrees)
        linear_cone = is_linear_cone(wt, dg)
        regular, witness = is_strictly_regular(wt, dg, dp_cap=dp_cap)
    return RegularityReport(
        well_formed=is_wellformed_wps(wt),
        linear_cone=linear_cone,
        strictly_regular=regular,
        violating_subset=witness,
        pair_trivial=trivial,
        nondivisible_facets=tuple(tuple(f) for f in nd.sorted_facets()),
        strongly_nondivisible_facets=tuple(tuple(f) for f in snd.sorted_facets()),
    )
