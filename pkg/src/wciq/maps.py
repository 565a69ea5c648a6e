"""Weighted simplicial maps and admissible injection families.

A weighted simplicial map between weighted complexes sends faces to faces
so that the source face weight divides the image face weight. Such maps
need not be determined by vertex images on the level of weights, which is
why the central object here is a family of injections indexed by the
divisors b occurring as face weights of the source complex:

* for each b, an injection from the b-divisible vertex set S^(b) into the
  degree indices whose degree is representable over the weights of S^(b);
* along each cover q of b in the divisibility poset of occurring face
  weights (q | b), the image of the b-injection is contained in the image
  of the q-injection;
* two distinct vertices whose weights divide one another receive distinct
  images under their own weight-level injections.

The family induces a map on faces by applying the injection at the face's
weight, so the image cardinality always matches the face cardinality.
Order preservation on nested faces is not forced by the invariants and is
verified empirically, as is the per-face representability of every image
degree.

The family search is a backtracking constraint solve with
most-constrained-variable ordering and fixed tie-breaks (ascending b,
ascending vertex index, ascending degree index), so identical inputs give
identical families.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping

from wciq.arith import (
    DEFAULT_DP_CAP,
    UNKNOWN,
    DegreesLike,
    DegreeTuple,
    WeightsLike,
    WeightTuple,
    as_degrees,
    as_weights,
    gcd_of,
    is_representable,
    poset_covers,
    representable_degrees,
)
from wciq.complexes import Complex, WeightedComplex, singular_complex
from wciq.errors import (
    InputError,
    InternalConsistencyError,
    PreconditionFailure,
    ResourceLimitError,
)
from wciq.regularity import is_strictly_regular

#: Above this many source faces the verifier switches to value-class
#: representatives instead of full face enumeration.
DEFAULT_FACE_LIMIT = 4096


@dataclass(frozen=True)
class WeightedMap:
    """Vertex assignment between two weighted complexes."""

    source: WeightedComplex
    target: WeightedComplex
    vertex_assignment: Mapping[int, int]

    def __post_init__(self):
        object.__setattr__(self, "vertex_assignment", dict(self.vertex_assignment))

    def image(self, face: Iterable[int]) -> frozenset[int]:
        try:
            return frozenset(self.vertex_assignment[v] for v in face)
        except KeyError as exc:
            raise InputError(f"vertex {exc.args[0]} has no assignment") from exc


@dataclass(frozen=True)
class MapValidation:
    """Verdicts of the three map conditions, each with a first witness."""

    simplicial: bool
    simplicial_witness: tuple[int, ...] | None
    weighted: bool
    weighted_witness: tuple[int, ...] | None
    contracts_face: tuple[int, ...] | None

    @property
    def valid(self) -> bool:
        return self.simplicial and self.weighted

    @property
    def noncontracting(self) -> bool:
        return self.contracts_face is None


#: Guard for the class-reduced face sweep in validate_weighted_map.
_CLASS_LIMIT = 1 << 16


def validate_weighted_map(fmap: WeightedMap) -> MapValidation:
    """Check the simplicial, weighted, and non-contraction conditions.

    Verdicts for a face depend only on its set of (weight, image) pairs,
    so faces are deduplicated by that class; each class is realized by an
    actual face inside some facet, and the lex-least realization is kept
    as the potential witness. The reported witness is the realization of
    the first failing class in (cardinality, lex) order. Contraction
    happens exactly when some facet holds two vertices with a common
    image, so it is detected pairwise.
    """
    src = fmap.source
    tgt = fmap.target
    for v in src.complex.vertices:
        if v not in fmap.vertex_assignment:
            raise InputError(f"source vertex {v} has no assignment")

    def vkey(v: int) -> tuple[int, int]:
        return (src.vertex_weights[v], fmap.vertex_assignment[v])

    # Lex-least realizing face per (weight, image)-class.
    realizations: dict[frozenset[tuple[int, int]], tuple[int, ...]] = {}
    for f in src.complex.facets:
        in_facet: dict[tuple[int, int], int] = {}
        for v in sorted(f):
            in_facet.setdefault(vkey(v), v)
        keys = sorted(in_facet)
        for k in range(1, len(keys) + 1):
            for combo in combinations(keys, k):
                face = tuple(sorted(in_facet[key] for key in combo))
                cls = frozenset(combo)
                prev = realizations.get(cls)
                if prev is None or face < prev:
                    realizations[cls] = face
                if len(realizations) > _CLASS_LIMIT:
                    raise ResourceLimitError(
                        f"weighted map check exceeds {_CLASS_LIMIT} face classes")

    simplicial = True
    simplicial_witness = None
    weighted = True
    weighted_witness = None
    tgt_vertices = set(tgt.complex.vertices)
    for cls in sorted(realizations, key=lambda s: (len(s), realizations[s])):
        face = realizations[cls]
        img = fmap.image(face)
        if not img <= tgt_vertices or not tgt.complex.is_face(img):
            if simplicial:
                simplicial = False
                simplicial_witness = face
            continue
        if weighted and tgt.face_weight(img) % src.face_weight(face) != 0:
            weighted = False
            weighted_witness = face

    contracts = None
    for f in src.complex.facets:
        by_image: dict[int, int] = {}
        for v in sorted(f):
            img = fmap.vertex_assignment[v]
            if img in by_image:
                pair = (by_image[img], v)
                if contracts is None or pair < contracts:
                    contracts = pair
                break
            by_image[img] = v
    return MapValidation(simplicial, simplicial_witness,
                         weighted, weighted_witness, contracts)


def find_noncontracting_map(weights: WeightsLike,
                            degrees: DegreesLike) -> WeightedMap | None:
    """Search for a non-contracting weighted simplicial map from the
    singular complex of the weights to the singular complex of the degrees.

    Exhaustive backtracking over vertex assignments in ascending vertex
    order with ascending target values, pruning on every face completed by
    the newest assignment; the first solution in that order is returned.
    A returned map certifies that a general quasi-smooth complete
    intersection with these data is smooth and well-formed.
    """
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    src = singular_complex(wt)
    tgt = singular_complex(WeightTuple.of(tuple(dg)) if len(dg) else (1,))
    src_verts = list(src.complex.vertices)
    tgt_verts = list(tgt.complex.vertices)
    if not src_verts:
        return WeightedMap(src, tgt, {})
    if not tgt_verts:
        return None

    # Vertex weight must divide the image vertex weight.
    domains = [
        [t for t in tgt_verts if tgt.vertex_weights[t] % src.vertex_weights[v] == 0]
        for v in src_verts
    ]
    if any(not d for d in domains):
        return None

    position = {v: k for k, v in enumerate(src_verts)}
    all_faces = src.complex.faces()
    assert all_faces is not None
    faces_by_last: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(len(src_verts))}
    for face in all_faces:
        faces_by_last[max(position[v] for v in face)].append(face)

    assignment: dict[int, int] = {}

    def face_ok(face: tuple[int, ...]) -> bool:
        img = frozenset(assignment[v] for v in face)
        if len(img) < len(face):
            return False
        if not tgt.complex.is_face(img):
            return False
        return tgt.face_weight(img) % src.face_weight(face) == 0

    def extend(k: int) -> bool:
        if k == len(src_verts):
            return True
        v = src_verts[k]
        for t in domains[k]:
            assignment[v] = t
            if all(face_ok(face) for face in faces_by_last[k]):
                if extend(k + 1):
                    return True
            del assignment[v]
        return False

    if extend(0):
        return WeightedMap(src, tgt, dict(assignment))
    return None


@dataclass(frozen=True)
class AdmissibleFamily:
    """Injections at every occurring face weight b of the source complex.

    im_phi lists the occurring face weights ascending, domains maps b to
    the b-divisible vertex indices, injections maps b to the vertex-to-
    degree-index assignment (degree indices are 1-based).
    """

    im_phi: tuple[int, ...]
    domains: Mapping[int, tuple[int, ...]]
    injections: Mapping[int, Mapping[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "domains",
                           {b: tuple(vs) for b, vs in self.domains.items()})
        object.__setattr__(self, "injections",
                           {b: dict(m) for b, m in self.injections.items()})

    def vertex_weight(self, i: int) -> int:
        """The weight of vertex i is the largest b whose domain holds i."""
        candidates = [b for b in self.im_phi if i in self.injections[b]]
        if not candidates:
            raise InputError(f"vertex {i} is not in any injection domain")
        return max(candidates)

    def vertex_image(self, i: int) -> int:
        return self.injections[self.vertex_weight(i)][i]

    def face_image(self, face: Iterable[int]) -> frozenset[int]:
        return induced_face_map(self, face)


def occurring_face_weights(weights: WeightsLike) -> tuple[int, ...]:
    """All gcds above 1 of nonempty sets of weight values: the face weights
    of the singular complex. Computed as the pairwise gcd closure."""
    wt = as_weights(weights)
    vals = set(wt.heavy_values())
    changed = True
    while changed:
        changed = False
        for x, y in combinations(sorted(vals), 2):
            g = gcd(x, y)
            if g > 1 and g not in vals:
                vals.add(g)
                changed = True
    return tuple(sorted(vals))


def _family_skeleton(wt: WeightTuple, dg: DegreeTuple, dp_cap: int):
    """Shared precomputation: domains, admissible degree sets, cover edges,
    and divisor vertex pairs."""
    im_phi = occurring_face_weights(wt)
    domains = {
        b: tuple(i for i, a in enumerate(wt) if a % b == 0)
        for b in im_phi
    }
    good = {
        b: tuple(sorted(representable_degrees(
            {wt[i] for i in domains[b]}, dg, dp_cap=dp_cap)))
        for b in im_phi
    }
    covers_down = {b: tuple(sorted(poset_covers(im_phi, b))) for b in im_phi}
    heavy = wt.heavy()
    divisor_pairs = [
        (i, k) for i, k in combinations(heavy, 2)
        if wt[k] % wt[i] == 0 or wt[i] % wt[k] == 0
    ]
    return im_phi, domains, good, covers_down, divisor_pairs


def family_csp_summary(weights: WeightsLike, degrees: DegreesLike, *,
                       dp_cap: int = DEFAULT_DP_CAP) -> dict:
    """Constraint inventory of the family search, used as the certificate
    accompanying an unsatisfiable search."""
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    im_phi, domains, good, covers_down, divisor_pairs = _family_skeleton(wt, dg, dp_cap)
    return {
        "im_phi": list(im_phi),
        "domains": {str(b): list(domains[b]) for b in im_phi},
        "admissible_degrees": {str(b): list(good[b]) for b in im_phi},
        "cover_edges": [[q, b] for b in im_phi for q in covers_down[b]],
        "divisor_vertex_pairs": [list(p) for p in divisor_pairs],
    }


def build_admissible_family(weights: WeightsLike, degrees: DegreesLike, *,
                            dp_cap: int = DEFAULT_DP_CAP) -> AdmissibleFamily | None:
    """Build an admissible injection family, or return None when the
    constraints are unsatisfiable.

    Requires strict regularity, which guarantees each injection enough
    admissible degrees on its own; the solver couples the injections via
    cover image containment and divisor-pair vertex separation.
    """
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    regular, witness = is_strictly_regular(wt, dg, dp_cap=dp_cap)
    if not regular:
        raise PreconditionFailure(
            "strictly_regular",
            f"weights are not strictly regular for the degrees; "
            f"violating index subset {witness}",
            witness=witness)
    im_phi, domains, good, covers_down, divisor_pairs = _family_skeleton(wt, dg, dp_cap)
    if not im_phi:
        return AdmissibleFamily((), {}, {})

    good_sets = {b: frozenset(good[b]) for b in im_phi}
    variables = [(b, i) for b in im_phi for i in domains[b]]
    partners: dict[int, list[int]] = {}
    for i, k in divisor_pairs:
        partners.setdefault(i, []).append(k)
        partners.setdefault(k, []).append(i)

    assignment: dict[tuple[int, int], int] = {}
    used: dict[int, set[int]] = {b: set() for b in im_phi}

    def complete(b: int) -> bool:
        return len(used[b]) == len(domains[b])

    def diagonal_conflict(b: int, i: int, j: int) -> bool:
        # Vertex separation applies between weight-level injections only.
        if b != wt[i]:
            return False
        for k in partners.get(i, ()):
            other = assignment.get((wt[k], k))
            if other == j:
                return True
        return False

    def candidates(b: int, i: int) -> list[int]:
        out = []
        for j in good[b]:
            if j in used[b]:
                continue
            if diagonal_conflict(b, i, j):
                continue
            ok = True
            for q in covers_down[b]:
                if complete(q):
                    if j not in used[q]:
                        ok = False
                        break
                elif j not in good_sets[q]:
                    ok = False
                    break
            if ok:
                out.append(j)
        return out

    cover_edges = [(q, b) for b in im_phi for q in covers_down[b]]

    def globally_feasible() -> bool:
        for q, b in cover_edges:
            needed = used[b] - used[q]
            if not needed:
                continue
            slack = len(domains[q]) - len(used[q])
            if len(needed) > slack or not needed <= good_sets[q]:
                return False
        return True

    def solve() -> bool:
        unassigned = [v for v in variables if v not in assignment]
        if not unassigned:
            return True
        scored = []
        for b, i in unassigned:
            cands = candidates(b, i)
            if not cands:
                return False
            scored.append((len(cands), b, i, cands))
        _, b, i, cands = min(scored, key=lambda t: (t[0], t[1], t[2]))
        for j in cands:
            assignment[(b, i)] = j
            used[b].add(j)
            if globally_feasible() and solve():
                return True
            used[b].discard(j)
            del assignment[(b, i)]
        return False

    if not solve():
        return None
    fam = AdmissibleFamily(
        im_phi,
        domains,
        {b: {i: assignment[(b, i)] for i in domains[b]} for b in im_phi},
    )
    leftovers = check_family_invariants(wt, dg, fam, dp_cap=dp_cap)
    if leftovers:
        raise InternalConsistencyError(
            f"solver produced a family violating its own invariants: {leftovers}")
    return fam


def check_family_invariants(weights: WeightsLike, degrees: DegreesLike,
                            fam: AdmissibleFamily, *,
                            dp_cap: int = DEFAULT_DP_CAP) -> list[str]:
    """All invariant violations of a family against the given pair,
    as human-readable strings. Empty means the family is admissible."""
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    problems: list[str] = []
    im_phi = occurring_face_weights(wt)
    if tuple(fam.im_phi) != im_phi:
        problems.append(f"occurring face weights mismatch: {fam.im_phi} vs {im_phi}")
        return problems
    for b in im_phi:
        expect = tuple(i for i, a in enumerate(wt) if a % b == 0)
        if tuple(fam.domains.get(b, ())) != expect:
            problems.append(f"domain of {b} mismatch: {fam.domains.get(b)} vs {expect}")
            continue
        inj = fam.injections.get(b, {})
        if sorted(inj) != list(expect):
            problems.append(f"injection at {b} does not cover its domain")
            continue
        images = list(inj.values())
        if len(set(images)) != len(images):
            problems.append(f"injection at {b} is not injective: {inj}")
        try:
            admissible = representable_degrees(
                {wt[i] for i in expect}, dg, dp_cap=dp_cap)
        except ResourceLimitError:
            raise
        bad = [j for j in images if j not in admissible]
        if bad:
            problems.append(
                f"injection at {b} uses non-representable degree indices {sorted(bad)}")
    if problems:
        return problems
    for b in im_phi:
        im_b = set(fam.injections[b].values())
        for q in poset_covers(im_phi, b):
            if not im_b <= set(fam.injections[q].values()):
                problems.append(
                    f"image of injection at {b} is not contained in the image at {q}")
    heavy = wt.heavy()
    for i, k in combinations(heavy, 2):
        if wt[k] % wt[i] == 0 or wt[i] % wt[k] == 0:
            if fam.injections[wt[i]][i] == fam.injections[wt[k]][k]:
                problems.append(
                    f"vertices {i} and {k} with dividing weights share image "
                    f"{fam.injections[wt[i]][i]}")
    return problems


def induced_face_map(fam: AdmissibleFamily, face: Iterable[int]) -> frozenset[int]:
    """Image of a face under the injection at the face's weight.

    The face weight is the gcd of the member vertex weights; it always
    occurs in im_phi for a genuine face, and every member is b-divisible,
    so the injection applies elementwise.
    """
    members = tuple(sorted(set(face)))
    if not members:
        raise InputError("the empty set has no induced image")
    try:
        ws = [fam.vertex_weight(i) for i in members]
    except InputError as exc:
        raise InputError(f"not a face of the singular complex: {members}") from exc
    b = gcd_of(ws)
    if b not in fam.injections:
        raise InputError(f"not a face of the singular complex: {members}")
    inj = fam.injections[b]
    return frozenset(inj[i] for i in members)


def vertex_fibers(fam: AdmissibleFamily) -> dict[int, tuple[int, ...]]:
    """Partition of all injection-domain vertices by their weight-level
    image degree index. Degrees with empty fiber are absent."""
    verts: set[int] = set()
    for b in fam.im_phi:
        verts.update(fam.domains[b])
    fibers: dict[int, list[int]] = {}
    for i in sorted(verts):
        fibers.setdefault(fam.vertex_image(i), []).append(i)
    return {j: tuple(vs) for j, vs in sorted(fibers.items())}


@dataclass(frozen=True)
class PosetMapReport:
    """Empirical verification of the induced face map.

    property1: image cardinality equals face cardinality on every face.
    property2: every image degree of a face is representable over the
    face's weights, with one record per (face, degree index) pair.
    property3: no edge between vertices with dividing weights is
    contracted by the weight-level images.
    order_preserving: nested faces have nested images.
    scope is "all-faces" for full enumeration; beyond the face limit a
    canonical subfamily (at most two least indices per weight value)
    stands in for properties 1 and order preservation, while property 2
    switches to exact value-class records.
    """

    family_violations: tuple[str, ...]
    property1: bool
    property1_witness: tuple[int, ...] | None
    property2: bool
    property2_records: tuple[tuple[tuple[int, ...], int, bool], ...]
    property3: bool
    property3_witness: tuple[int, int] | None
    order_preserving: bool
    order_witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    scope: str

    @property
    def all_ok(self) -> bool:
        return (not self.family_violations and self.property1
                and self.property2 and self.property3 and self.order_preserving)


def _restricted_indices(wt: WeightTuple, per_value: int = 2) -> list[int]:
    out: list[int] = []
    for v in wt.heavy_values():
        out.extend(wt.indices_of(v)[:per_value])
    return sorted(out)


def verify_poset_map(weights: WeightsLike, degrees: DegreesLike,
                     fam: AdmissibleFamily, *,
                     dp_cap: int = DEFAULT_DP_CAP,
                     face_limit: int = DEFAULT_FACE_LIMIT) -> PosetMapReport:
    """Check the induced face map empirically and report every verdict."""
    wt = as_weights(weights)
    dg = as_degrees(degrees)
    violations = tuple(check_family_invariants(wt, dg, fam, dp_cap=dp_cap))
    if violations:
        return PosetMapReport(violations, False, None, False, (), False, None,
                              False, None, "invariants-failed")

    sing = singular_complex(wt)
    faces = sing.complex.faces(limit=face_limit)
    scope = "all-faces"
    class_records: list[tuple[tuple[int, ...], int, bool]] = []
    if faces is None:
        scope = "value-class-representatives"
        keep = set(_restricted_indices(wt))
        restricted = Complex.from_facets(
            sing.complex.n_vertices,
            [f & keep for f in sing.complex.facets if f & keep])
        faces = restricted.faces(limit=face_limit)
        if faces is None:
            raise ResourceLimitError(
                f"face enumeration exceeds {face_limit} even on value-class "
                f"representatives")
        # Exact property-2 coverage: for every value set with gcd above 1,
        # the maximal index set is a face and its image is the superset of
        # every class member's image.
        values = wt.heavy_values()
        if 2 ** len(values) > face_limit:
            raise ResourceLimitError(
                f"value-subset sweep over {len(values)} values exceeds "
                f"{face_limit} classes")
        for r in range(1, len(values) + 1):
            for vs in combinations(values, r):
                if gcd_of(vs) == 1:
                    continue
                members = tuple(sorted(
                    i for v in vs for i in wt.indices_of(v)))
                img = sorted(induced_face_map(fam, members))
                for j in img:
                    ok = is_representable(
                        dg.degree(j), set(vs), dp_cap=dp_cap)
                    if ok is UNKNOWN:
                        raise ResourceLimitError(
                            f"representability of d_{j} over {sorted(vs)} "
                            f"exceeds the dp cap {dp_cap}")
                    class_records.append((members, j, ok is True))

    face_sets = [tuple(f) for f in faces]
    face_lookup = {frozenset(f) for f in face_sets}

    property1 = True
    p1_witness = None
    records: list[tuple[tuple[int, ...], int, bool]] = []
    for face in face_sets:
        img = induced_face_map(fam, face)
        if len(img) != len(face) and property1:
            property1 = False
            p1_witness = face
        if scope == "all-faces":
            for j in sorted(img):
                ok = is_representable(
                    dg.degree(j), {wt[i] for i in face}, dp_cap=dp_cap)
                if ok is UNKNOWN:
                    raise ResourceLimitError(
                        f"representability of d_{j} over face {face} exceeds "
                        f"the dp cap {dp_cap}")
                records.append((face, j, ok is True))
    if scope != "all-faces":
        records = class_records
    property2 = all(ok for _, _, ok in records)

    property3 = True
    p3_witness = None
    heavy = wt.heavy()
    for i, k in combinations(heavy, 2):
        if wt[k] % wt[i] != 0 and wt[i] % wt[k] != 0:
            continue
        if fam.vertex_image(i) == fam.vertex_image(k):
            property3 = False
            p3_witness = (i, k)
            break

    order_preserving = True
    order_witness = None
    for face in face_sets:
        if len(face) < 2:
            continue
        img = induced_face_map(fam, face)
        for drop in range(len(face)):
            sub = face[:drop] + face[drop + 1:]
            if frozenset(sub) not in face_lookup:
                continue
            if not induced_face_map(fam, sub) <= img:
                order_preserving = False
                order_witness = (sub, face)
                break
        if not order_preserving:
            break

    return PosetMapReport(
        violations, property1, p1_witness, property2, tuple(records),
        property3, p3_witness, order_preserving, order_witness, scope)
