"""Facet-represented abstract and weighted simplicial complexes.

A complex is stored by its facets, the inclusion-maximal faces. A set is a
face exactly when it is contained in some facet, so downward closure is
structural rather than checked. Vertices appearing in no facet are not part
of the complex even when they lie inside the ambient label range; an
isolated vertex must be listed as a singleton facet to count as a face.

Two derived complexes are built from a weight tuple:

* the singular complex, whose faces are the index sets with a common
  divisor greater than 1 (the strata of a weighted projective space that
  are singular along coordinate subspaces), weighted by that gcd;
* the base complex of a degree d, whose faces are the index sets over
  which d is not a non-negative combination of the weights (coordinate
  strata lying in the base locus of degree-d forms).

Enumeration orders are deterministic everywhere: faces sort by cardinality
then lexicographically, facet lists and minimal non-faces sort
lexicographically on their sorted vertex tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd
from typing import Callable, Iterable, Iterator, Mapping

from wciq.arith import (
    DEFAULT_DP_CAP,
    UNKNOWN,
    WeightsLike,
    WeightTuple,
    as_weights,
    distinct_prime_factors,
    is_representable,
)
from wciq.errors import InputError, ResourceLimitError

#: Vertex-count guard for exponential enumerations (minimal non-faces).
_ENUMERATION_VERTEX_LIMIT = 20


def _sorted_key(s: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(s))


@dataclass(frozen=True)
class Complex:
    """Abstract simplicial complex on vertex labels 0..n_vertices-1."""

    n_vertices: int
    facets: frozenset[frozenset[int]]

    @classmethod
    def from_facets(cls, n_vertices: int,
                    facets: Iterable[Iterable[int]]) -> "Complex":
        """Normalize input facets: validate labels, drop non-maximal sets."""
        if isinstance(n_vertices, bool) or not isinstance(n_vertices, int) or n_vertices < 0:
            raise InputError(f"n_vertices must be a non-negative integer, got {n_vertices!r}")
        sets = set()
        for f in facets:
            fs = frozenset(f)
            if not fs:
                raise InputError("facets must be nonempty vertex sets")
            for v in fs:
                if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n_vertices:
                    raise InputError(
                        f"facet vertex {v!r} outside 0..{n_vertices - 1}")
            sets.add(fs)
        maximal = frozenset(f for f in sets if not any(f < g for g in sets))
        return cls(n_vertices, maximal)

    @property
    def vertices(self) -> tuple[int, ...]:
        """Vertices occurring in some facet, ascending."""
        out: set[int] = set()
        for f in self.facets:
            out |= f
        return tuple(sorted(out))

    def is_face(self, face: Iterable[int]) -> bool:
        """Is the given vertex set contained in some facet?

        The empty set is a face of every complex that has at least one
        facet, and of no complex without facets.
        """
        fs = frozenset(face)
        for v in fs:
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < self.n_vertices:
                raise InputError(f"vertex {v!r} outside 0..{self.n_vertices - 1}")
        if not fs:
            return bool(self.facets)
        return any(fs <= f for f in self.facets)

    def faces(self, max_card: int | None = None,
              limit: int | None = None) -> list[tuple[int, ...]] | None:
        """Nonempty faces as sorted tuples, ordered by (cardinality, lex).

        max_card bounds the face cardinality. When limit is given and more
        than `limit` faces exist, returns None instead of a list.
        """
        seen: set[tuple[int, ...]] = set()
        for f in self.facets:
            fv = sorted(f)
            top = len(fv) if max_card is None else min(len(fv), max_card)
            for k in range(1, top + 1):
                for combo in combinations(fv, k):
                    seen.add(combo)
                    if limit is not None and len(seen) > limit:
                        return None
        return sorted(seen, key=lambda t: (len(t), t))

    def sorted_facets(self) -> list[tuple[int, ...]]:
        """Facets as sorted tuples, in lexicographic order."""
        return sorted(_sorted_key(f) for f in self.facets)


@dataclass(frozen=True, eq=True)
class WeightedComplex:
    """Complex together with positive vertex weights.

    The weight of a face is the gcd of its vertex weights, so the weight
    function is determined by the vertex weights alone. The weight map
    covers exactly the vertices occurring in facets.
    """

    complex: Complex
    vertex_weights: Mapping[int, int]

    def __post_init__(self):
        verts = set(self.complex.vertices)
        keys = set(self.vertex_weights)
        if keys != verts:
            raise InputError(
                f"vertex weights must cover exactly the complex vertices; "
                f"got keys {sorted(keys)} for vertices {sorted(verts)}")
        for v, w in self.vertex_weights.items():
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise InputError(f"weight of vertex {v} must be a positive integer")
        object.__setattr__(self, "vertex_weights", dict(self.vertex_weights))

    def face_weight(self, face: Iterable[int]) -> int:
        """gcd of the vertex weights over a nonempty vertex set."""
        fs = tuple(face)
        if not fs:
            raise InputError("face weight of the empty set is undefined")
        try:
            ws = [self.vertex_weights[v] for v in fs]
        except KeyError as exc:
            raise InputError(f"vertex {exc.args[0]} carries no weight") from exc
        return gcd(*ws) if len(ws) > 1 else ws[0]

    def __eq__(self, other):
        if not isinstance(other, WeightedComplex):
            return NotImplemented
        return (self.complex == other.complex
                and dict(self.vertex_weights) == dict(other.vertex_weights))


@dataclass(frozen=True)
class SRPresentation:
    """Stanley-Reisner style presentation of a weighted complex.

    variable_degrees lists the vertex weights in ascending vertex order
    (the vertices themselves are kept for label bookkeeping), and the
    generators are the minimal non-faces within that vertex set. A set is
    a face exactly when it contains no generator.
    """

    vertices: tuple[int, ...]
    variable_degrees: tuple[int, ...]
    generators: tuple[frozenset[int], ...]


def maximal_members(items: Iterable[int],
                    member: Callable[[frozenset[int]], bool]) -> list[frozenset[int]]:
    """Inclusion-maximal sets of a downward-closed family given by `member`.

    `member` must be closed under taking subsets (and true on singletons it
    admits). Level search: grow admissible sets one vertex at a time; a set
    with no admissible extension is maximal.
    """
    verts = sorted(set(items))
    cache: dict[frozenset[int], bool] = {}

    def ok(s: frozenset[int]) -> bool:
        if s not in cache:
            cache[s] = member(s)
        return cache[s]

    level = [frozenset([v]) for v in verts if ok(frozenset([v]))]
    maximal: list[frozenset[int]] = []
    while level:
        nxt: set[frozenset[int]] = set()
        for s in level:
            extended = False
            for v in verts:
                if v in s:
                    continue
                t = s | {v}
                if ok(t):
                    nxt.add(t)
                    extended = True
            if not extended:
                maximal.append(s)
        level = sorted(nxt, key=_sorted_key)
    return sorted(maximal, key=_sorted_key)


def singular_complex(weights: WeightsLike) -> WeightedComplex:
    """Weighted complex of index sets sharing a common divisor above 1.

    Facets are the maximal sets among the prime strata {i : p | a_i}, one
    per prime dividing some weight. Weight-1 indices divide into no
    stratum and are therefore never faces. The face weight is the gcd of
    the member weights, always above 1 here.
    """
    wt = as_weights(weights)
    primes: set[int] = set()
    for a in wt:
        if a > 1:
            primes.update(distinct_prime_factors(a))
    strata = {
        frozenset(i for i, a in enumerate(wt) if a % p == 0)
        for p in primes
    }
    facets = [s for s in strata if not any(s < t for t in strata)]
    cx = Complex.from_facets(len(wt), facets)
    return WeightedComplex(cx, {i: wt[i] for i in cx.vertices})


def base_complex(weights: WeightsLike, d: int, *,
                 dp_cap: int = DEFAULT_DP_CAP) -> WeightedComplex:
    """Weighted complex of index sets over which d is not representable.

    Representability depends only on the set of distinct weight values, so
    the facet search runs over distinct values and re-expands: all indices
    carrying a value enter together. Values dividing d (weight 1 included)
    already represent d alone, so by monotonicity no face contains them.
    """
    wt = as_weights(weights)
    if isinstance(d, bool) or not isinstance(d, int) or d < 1:
        raise InputError(f"degree must be a positive integer, got {d!r}")
    values = [v for v in wt.heavy_values() if d % v != 0]

    def not_representable(vals: frozenset[int]) -> bool:
        verdict = is_representable(d, vals, dp_cap=dp_cap)
        if verdict is UNKNOWN:
            raise ResourceLimitError(
                f"representability of {d} over {sorted(vals)} exceeds the "
                f"dp cap {dp_cap}")
        return verdict is False

    value_facets = maximal_members(values, not_representable)
    facets = [
        frozenset(i for v in vals for i in wt.indices_of(v))
        for vals in value_facets
    ]
    cx = Complex.from_facets(len(wt), facets)
    return WeightedComplex(cx, {i: wt[i] for i in cx.vertices})


def is_face(cx: Complex, face: Iterable[int]) -> bool:
    return cx.is_face(face)


def minimal_nonfaces(cx: Complex,
                     within: Iterable[int] | None = None) -> list[frozenset[int]]:
    """Inclusion-minimal non-faces, lexicographic on sorted vertex tuples.

    The ambient vertex set defaults to all labels 0..n_vertices-1; pass
    `within` to restrict it (presentations of weighted complexes restrict
    to the weighted vertices). A labeled vertex that is not a face shows up
    as a singleton non-face. The complex without facets has the empty set
    as its single minimal non-face, which keeps the defining equivalence
    (face iff containing no minimal non-face) intact.
    """
    if not cx.facets:
        return [frozenset()]
    if within is None:
        ambient = tuple(range(cx.n_vertices))
    else:
        ambient = tuple(sorted(set(within)))
    out = [frozenset((v,)) for v in ambient if not cx.is_face((v,))]
    verts = [v for v in ambient if cx.is_face((v,))]
    if len(verts) > _ENUMERATION_VERTEX_LIMIT:
        raise ResourceLimitError(
            f"minimal non-face enumeration over {len(verts)} vertices "
            f"exceeds the supported scale ({_ENUMERATION_VERTEX_LIMIT})")
    for k in range(2, len(verts) + 1):
        for combo in combinations(verts, k):
            if cx.is_face(combo):
                continue
            if all(cx.is_face(combo[:i] + combo[i + 1:]) for i in range(k)):
                out.append(frozenset(combo))
    return sorted(out, key=_sorted_key)


def sr_presentation(wc: WeightedComplex) -> SRPresentation:
    """Presentation with one variable per weighted vertex.

    Degrees follow ascending vertex order; generators are the minimal
    non-faces within the weighted vertex set, keeping original labels.
    """
    verts = tuple(sorted(wc.vertex_weights))
    degrees = tuple(wc.vertex_weights[v] for v in verts)
    gens = tuple(minimal_nonfaces(wc.complex, within=verts))
    return SRPresentation(verts, degrees, gens)


def faces_up_to(cx: Complex, k: int) -> Iterator[frozenset[int]]:
    """All nonempty faces of dimension at most k (cardinality at most k+1),
    each exactly once, ordered by (cardinality, lex)."""
    if k < 0:
        return iter(())
    listed = cx.faces(max_card=k + 1)
    assert listed is not None
    return iter(frozenset(t) for t in listed)
