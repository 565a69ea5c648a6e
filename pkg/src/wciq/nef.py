"""Nef partitions of weighted complete intersection data.

A partition I_0, I_1, ..., I_c of the weight indices is a nef partition
when the weights in I_j sum to the j-th degree for every j >= 1; the
leftover part I_0 then sums to the Fano index automatically. It is nice
when I_0 contains a weight-one index, and strong when I_0 consists of
weight-one indices only and every weight in I_j divides the j-th degree.

Two ways in: a direct combinatorial search over distributions of the
repeated heavy weights (find_nef_partition), and the structural
construction from an admissible injection family, whose vertex fibers
force the heavy part of each I_j (construct_strong_nef_partition). The
construction only needs the four stated preconditions; everything else
it checks at runtime and reports as an internal error if violated,
because the input data cannot cause those failures.
"""

from __future__ import annotations

from dataclasses import dataclass

from wciq.arith import (
    DEFAULT_DP_CAP,
    DegreesLike,
    WeightsLike,
    as_degrees,
    as_weights,
)
from wciq.errors import (
    InputError,
    InternalConsistencyError,
    PreconditionFailure,
    ResourceLimitError,
)
from wciq.maps import AdmissibleFamily, build_admissible_family, vertex_fibers
from wciq.regularity import (
    is_linear_cone,
    is_strictly_regular,
    pair_nontriviality_witness,
)

DEFAULT_NODE_BUDGET = 2_000_000

_MODES = ("any", "nice", "strong")


def fano_index(weights: WeightsLike, degrees: DegreesLike) -> int:
    """Sum of weights minus sum of degrees. Positive for Fano data."""
    return as_weights(weights).total - as_degrees(degrees).total


@dataclass(frozen=True)
class NefPartition:
    """parts[0] is the leftover part I_0; parts[j] pairs with degree j."""

    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "parts", tuple(tuple(sorted(p)) for p in self.parts))

    @property
    def leftover(self) -> tuple[int, ...]:
        return self.parts[0]


@dataclass(frozen=True)
class NefClassification:
    valid: bool
    nice: bool
    strong: bool

    def satisfies(self, mode: str) -> bool:
        if mode == "any":
            return self.valid
        if mode == "nice":
            return self.nice
        if mode == "strong":
            return self.strong
        raise InputError(f"unknown mode {mode!r}; expected one of {_MODES}")


def classify_partition(weights: WeightsLike, degrees: DegreesLike,
                       partition: NefPartition) -> NefClassification:
    """Classify a structurally well-formed partition.

    Structure errors (wrong part count, overlap, indices missed or out of
    range) are input errors; failing the sum conditions is a verdict.
    """
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    if len(partition.parts) != len(dg) + 1:
        raise InputError(
            f"expected {len(dg) + 1} parts for {len(dg)} degrees, "
            f"got {len(partition.parts)}")
    seen: set[int] = set()
    for p in partition.parts:
        for i in p:
            if not 0 <= i < len(wt):
                raise InputError(f"index {i} outside 0..{len(wt) - 1}")
            if i in seen:
                raise InputError(f"index {i} appears in more than one part")
            seen.add(i)
    if len(seen) != len(wt):
        missing = sorted(set(range(len(wt))) - seen)
        raise InputError(f"indices {missing} belong to no part")

    valid = all(
        sum(wt[i] for i in partition.parts[j]) == dg.degree(j)
        for j in range(1, len(dg) + 1))
    nice = valid and any(wt[i] == 1 for i in partition.leftover)
    strong = (valid
              and all(wt[i] == 1 for i in partition.leftover)
              and all(dg.degree(j) % wt[i] == 0
                      for j in range(1, len(dg) + 1)
                      for i in partition.parts[j]))
    return NefClassification(valid, nice, strong)


def find_nef_partition(weights: WeightsLike, degrees: DegreesLike,
                       mode: str = "strong", *,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> NefPartition | None:
    """Exhaustive search for a partition of the requested kind.

    Weight-one indices are interchangeable, so the search runs over
    distributions of each repeated heavy value across the parts and fills
    the remaining deficits with ones. None means proven nonexistence
    within the mode, not a timeout; running out of nodes raises instead.
    """
    if mode not in _MODES:
        raise InputError(f"unknown mode {mode!r}; expected one of {_MODES}")
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    c = len(dg)
    values = wt.heavy_values()
    mult = {v: len(wt.indices_of(v)) for v in values}
    n_ones = len(wt.ones())

    # counts[v] = how many v-weighted indices go to each part 0..c
    counts: dict[int, tuple[int, ...]] = {}
    nodes = 0

    def spend() -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceLimitError(
                f"partition search exceeded the node budget {node_budget}")

    def distributions(v: int):
        """All ways to split mult[v] copies of v over parts 0..c,
        ascending lexicographically in (k_0, ..., k_c)."""
        m = mult[v]
        allowed = [True] + [
            mode != "strong" or dg.degree(j) % v == 0 for j in range(1, c + 1)]
        if mode == "strong":
            allowed[0] = False

        def rec(j: int, left: int, acc: list[int]):
            spend()
            if j == c:
                if left == 0 or allowed[j]:
                    yield tuple(acc + [left])
                return
            top = left if allowed[j] else 0
            for k in range(0, top + 1):
                yield from rec(j + 1, left - k, acc + [k])

        yield from rec(0, m, [])

    def assign(vi: int) -> bool:
        spend()
        if vi == len(values):
            deficits = []
            for j in range(1, c + 1):
                used = sum(v * counts[v][j] for v in values)
                r = dg.degree(j) - used
                if r < 0:
                    return False
                deficits.append(r)
            if sum(deficits) > n_ones:
                return False
            leftover = n_ones - sum(deficits)
            if mode == "nice" and leftover < 1:
                return False
            return True
        v = values[vi]
        for dist in distributions(v):
            # prune: parts must not already exceed their degree
            ok = True
            for j in range(1, c + 1):
                used = sum(u * counts[u][j] for u in values[:vi]) + v * dist[j]
                if used > dg.degree(j):
                    ok = False
                    break
            if not ok:
                continue
            counts[v] = dist
            if assign(vi + 1):
                return True
            del counts[v]
        return False

    if not assign(0):
        return None

    # Deterministic expansion of the counts into index parts.
    parts: list[list[int]] = [[] for _ in range(c + 1)]
    ones = list(wt.ones())
    deficits = [0] * (c + 1)
    for j in range(1, c + 1):
        deficits[j] = dg.degree(j) - sum(v * counts[v][j] for v in values)
    leftover = n_ones - sum(deficits)
    parts[0].extend(ones[:leftover])
    pos = leftover
    for j in range(1, c + 1):
        parts[j].extend(ones[pos:pos + deficits[j]])
        pos += deficits[j]
    for v in values:
        idx = list(wt.indices_of(v))
        at = 0
        for j in range(c + 1):
            parts[j].extend(idx[at:at + counts[v][j]])
            at += counts[v][j]
    return NefPartition(tuple(tuple(p) for p in parts))


def construct_strong_nef_partition(
        weights: WeightsLike, degrees: DegreesLike, *,
        dp_cap: int = DEFAULT_DP_CAP,
) -> tuple[NefPartition, AdmissibleFamily, tuple[int, ...]]:
    """Build a strong nef partition from an admissible injection family.

    Preconditions, checked in order: the data is not a linear cone, the
    Fano index is positive, the weights are strictly regular for the
    degrees, and every non-divisible face weight set is strongly
    non-divisible. Each failure raises PreconditionFailure naming the
    hypothesis; anything unexpected after that is an internal error.

    Returns the partition, the family it came from, and the per-degree
    slack amounts (how many weight-one indices each part absorbed).
    """
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    if is_linear_cone(wt, dg):
        raise PreconditionFailure(
            "not_linear_cone", "some weight equals one of the degrees")
    idx = fano_index(wt, dg)
    if idx <= 0:
        raise PreconditionFailure("fano", f"the index {idx} is not positive")
    regular, witness = is_strictly_regular(wt, dg, dp_cap=dp_cap)
    if not regular:
        raise PreconditionFailure(
            "strictly_regular",
            f"violating index subset {sorted(witness)}", witness=witness)
    pair_witness = pair_nontriviality_witness(wt)
    if pair_witness is not None:
        raise PreconditionFailure(
            "pair_trivial",
            f"non-divisible but not strongly non-divisible subset "
            f"{sorted(pair_witness)}", witness=pair_witness)

    fam = build_admissible_family(wt, dg, dp_cap=dp_cap)
    if fam is None:
        raise InternalConsistencyError(
            "no admissible family exists although all preconditions hold")
    fibers = vertex_fibers(fam)
    c = len(dg)
    deltas = []
    for j in range(1, c + 1):
        fiber_sum = sum(wt[i] for i in fibers.get(j, ()))
        delta = dg.degree(j) - fiber_sum
        if delta < 0:
            raise InternalConsistencyError(
                f"fiber of degree {j} outweighs the degree: "
                f"{fiber_sum} > {dg.degree(j)}")
        deltas.append(delta)
    ones = list(wt.ones())
    if len(ones) != idx + sum(deltas):
        raise InternalConsistencyError(
            f"{len(ones)} weight-one indices cannot absorb index {idx} "
            f"plus slack {sum(deltas)}")
    parts: list[list[int]] = [ones[:idx]]
    pos = idx
    for j in range(1, c + 1):
        parts.append(ones[pos:pos + deltas[j - 1]] + list(fibers.get(j, ())))
        pos += deltas[j - 1]
    partition = NefPartition(tuple(tuple(p) for p in parts))
    if not classify_partition(wt, dg, partition).strong:
        raise InternalConsistencyError(
            "constructed partition failed its own classification")
    return partition, fam, tuple(deltas)
