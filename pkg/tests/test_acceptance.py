"""Gate suite for the advertised behavior of the package.

One test per shipped guarantee; each prints a single line

    [acceptance] criterion N (label): PASS|FAIL

so the full verdict survives in plain pytest output. Tolerances are
exact unless a line states a runtime bound. Seeds are fixed; nothing
here depends on wall-clock randomness.
"""

import random
import time
from itertools import combinations, product
from math import gcd

from helpers import (
    all_faces_by_definition,
    coprime_instance,
    faces_of,
    random_complex,
    random_weights,
    subset_gcd,
)
from wciq.arith import is_representable
from wciq.complexes import base_complex, singular_complex
from wciq.maps import (
    WeightedMap,
    build_admissible_family,
    find_noncontracting_map,
    induced_face_map,
    validate_weighted_map,
    verify_poset_map,
    vertex_fibers,
)
from wciq.nef import (
    classify_partition,
    construct_strong_nef_partition,
    fano_index,
    find_nef_partition,
)
from wciq.oracles import brute_force_representable, naive_strictly_regular
from wciq.realize import contraction_instance, realize_map_instance, \
    realize_weights, skeleton, verify_realization
from wciq.regularity import (
    is_non_divisible,
    is_strictly_regular,
    is_strongly_non_divisible,
    nondivisible_complex,
    pair_nontriviality_witness,
    strongly_nondivisible_complex,
)

MU = (16, 21, 25, 30)


def report(n: int, label: str, failures: list) -> None:
    verdict = "PASS" if not failures else "FAIL"
    print(f"[acceptance] criterion {n} ({label}): {verdict}")
    assert not failures, f"criterion {n} ({label}): {failures[:5]}"


def test_criterion_1_strong_partition_refuted():
    failures = []
    for t in (1, 2, 3):
        rho = tuple([1] * (61 + t) + [6, 10, 15])
        start = time.perf_counter()
        found = find_nef_partition(rho, MU, "strong")
        idx = fano_index(rho, MU)
        regular, reg_witness = is_strictly_regular(rho, MU)
        witness = pair_nontriviality_witness(rho)
        elapsed = time.perf_counter() - start
        if found is not None:
            failures.append(f"t={t}: strong partition reported")
        if idx != t:
            failures.append(f"t={t}: index {idx}")
        if not regular or reg_witness is not None:
            failures.append(f"t={t}: regularity verdict wrong")
        if witness != frozenset({61 + t, 62 + t, 63 + t}):
            failures.append(f"t={t}: witness {witness}")
        if elapsed >= 1.0:
            failures.append(f"t={t}: took {elapsed:.2f}s")
    report(1, "no strong partition on the padded triple", failures)


def test_criterion_2_singular_and_base_complexes():
    failures = []
    for t in (0, 1):
        rho = tuple([1] * (t + 1) + [6, 10, 15])
        a, b, c = t + 1, t + 2, t + 3
        sing = singular_complex(rho).complex.facets
        want_sing = frozenset(
            {frozenset({a, b}), frozenset({a, c}), frozenset({b, c})})
        if sing != want_sing:
            failures.append(f"t={t}: singular facets {sing}")
        want_base = {
            16: {frozenset({a, c}), frozenset({b, c})},
            21: {frozenset({a, b}), frozenset({b, c})},
            25: {frozenset({a, b}), frozenset({a, c})},
        }
        for d, want in want_base.items():
            got = base_complex(rho, d).complex.facets
            if got != frozenset(want):
                failures.append(f"t={t}: base facets for {d}: {got}")
    report(2, "reference singular and base complexes", failures)


def test_criterion_3_reference_injection_family():
    failures = []
    for t in (0, 1):
        rho = tuple([1] * (t + 1) + [6, 10, 15])
        a, b, c = t + 1, t + 2, t + 3
        fam = build_admissible_family(rho, MU)
        if fam is None:
            failures.append(f"t={t}: no family built")
            continue
        wanted = {
            (a,): {4}, (b,): {4}, (c,): {4},
            (a, b): {1, 4}, (a, c): {2, 4}, (b, c): {3, 4},
        }
        for face, want in wanted.items():
            got = induced_face_map(fam, face)
            if got != frozenset(want):
                failures.append(f"t={t}: image of {face} is {sorted(got)}")
        rep = verify_poset_map(rho, MU, fam)
        if not (rep.property1 and rep.property3 and rep.order_preserving):
            failures.append(f"t={t}: map verification {rep.scope}")
        if rep.scope != "all-faces" or not rep.property2:
            failures.append(f"t={t}: scope {rep.scope}")
        if not rep.property2_records:
            failures.append(f"t={t}: empty record table")
    report(3, "reference injection family and face images", failures)


def test_criterion_4_strong_construction_end_to_end():
    failures = []
    partition, _, deltas = construct_strong_nef_partition(
        (1, 1, 1, 1, 1, 2), (4,))
    if partition.parts != ((0, 1, 2), (3, 4, 5)) or deltas != (2,):
        failures.append(f"small case gave {partition.parts}, {deltas}")
    rng = random.Random(4040)
    for k in range(20):
        rho, mu = coprime_instance(rng)
        try:
            part, fam, deltas = construct_strong_nef_partition(rho, mu)
        except Exception as exc:
            failures.append(f"instance {k}: {exc!r}")
            continue
        cls = classify_partition(rho, mu, part)
        if not cls.strong:
            failures.append(f"instance {k}: partition not strong")
    report(4, "strong construction on coprime-value pairs", failures)


def test_criterion_5_oracle_equivalence():
    start = time.perf_counter()
    failures = []
    checked = 0

    # every value pair, every degree in range
    values_pool = range(2, 31)
    pairs = [(v,) for v in values_pool] + [
        (v, w) for v, w in combinations(values_pool, 2)]
    for vals in pairs:
        for d in range(1, 201):
            fast = is_representable(d, vals)
            slow = brute_force_representable(d, vals)
            if fast is not slow:
                failures.append(f"representability({d}, {vals})")
            checked += 1

    # seeded larger value sets
    rng = random.Random(5050)
    for _ in range(120):
        vals = tuple(rng.sample(range(2, 31), rng.randint(3, 5)))
        for d in range(1, 201):
            if is_representable(d, vals) is not brute_force_representable(d, vals):
                failures.append(f"representability({d}, {vals})")
            checked += 1

    # seeded regularity instances, full subset sweep as the referee
    for _ in range(300):
        values = rng.sample(range(2, 31), rng.randint(1, 5))
        heavy = []
        for v in values:
            heavy.extend([v] * rng.randint(1, 3))
        heavy = heavy[:10]
        rho = tuple([1] * rng.randint(0, 2) + heavy)
        mu = tuple(rng.randint(1, 200) for _ in range(rng.randint(0, 4)))
        if is_strictly_regular(rho, mu) != naive_strictly_regular(rho, mu):
            failures.append(f"regularity({rho}, {mu})")
        checked += 1

    elapsed = time.perf_counter() - start
    if elapsed >= 30:
        failures.append(f"took {elapsed:.1f}s")
    report(5, f"oracle equivalence on {checked} cases", failures)


def test_criterion_6_realization_round_trip():
    failures = []
    res = realize_weights(skeleton(4, 1))
    if tuple(res.weights) != (30, 154, 273, 715):
        failures.append(f"tetrahedron graph weights {tuple(res.weights)}")
    for v in range(4):
        incident = [p for f, p in res.prime_assignment.items() if v in f]
        prod = 1
        for p in incident:
            prod *= p
        if len(incident) != 3 or prod != res.weights[v]:
            failures.append(f"vertex {v} weight is not its edge-prime product")
    rng = random.Random(6060)
    done = 0
    while done < 200:
        cx = random_complex(rng)
        if not cx.facets:
            continue
        if not verify_realization(cx, realize_weights(cx).weights):
            failures.append(f"round trip failed on {cx.sorted_facets()}")
        done += 1
    report(6, "weights realize 200 seeded complexes", failures)


def test_criterion_7_planted_and_forced_maps():
    failures = []
    rng = random.Random(7070)
    done = 0
    while done < 20:
        cx = random_complex(rng, max_vertices=6, max_facets=8)
        verts = cx.vertices
        if len(verts) < 2:
            continue
        perm = list(verts)
        rng.shuffle(perm)
        tgt_n = max(verts) + 1
        inst = realize_map_instance(
            cx, type(cx).from_facets(tgt_n, [set(verts)]),
            dict(zip(verts, perm)),
            pad=rng.randrange(3), ones=rng.randrange(3))
        verdict = validate_weighted_map(inst.planted)
        if not (verdict.valid and verdict.noncontracting):
            failures.append(f"instance {done}: planted map rejected")
        found = find_noncontracting_map(inst.weights, inst.degrees)
        if found is None:
            failures.append(f"instance {done}: no map found")
        else:
            check = validate_weighted_map(found)
            if not (check.valid and check.noncontracting):
                failures.append(f"instance {done}: found map invalid")
        done += 1

    inst = contraction_instance(1, 2, 0, 5)
    src = singular_complex(inst.weights)
    tgt = singular_complex(inst.degrees)
    allowed = {j - 1 for j in inst.image_simplex}
    degs = tuple(inst.degrees)
    domains = {
        i: [p for p, d in enumerate(degs) if d % inst.weights[i] == 0]
        for i in src.complex.vertices}
    order = sorted(domains)
    total = 0
    for choice in product(*(domains[i] for i in order)):
        assignment = dict(zip(order, choice))
        verdict = validate_weighted_map(WeightedMap(src, tgt, assignment))
        if verdict.simplicial and verdict.weighted:
            total += 1
            if not set(assignment.values()) <= allowed:
                failures.append(f"map {assignment} escapes the simplex")
    if total == 0:
        failures.append("no weighted simplicial map exists at all")
    report(7, "planted maps validate, images are forced", failures)


def test_criterion_8_invariant_suites():
    failures = []
    rng = random.Random(8080)

    def check_closures(case):
        wt = random_weights(rng, max_len=7)
        d = rng.randint(1, 60)
        for cx, predicate in (
            (singular_complex(wt).complex,
             lambda s: subset_gcd(wt, s) > 1),
            (base_complex(wt, d).complex,
             lambda s: not brute_force_representable(
                 d, [wt[i] for i in s])),
        ):
            if faces_of(cx) != all_faces_by_definition(wt, predicate):
                failures.append(f"case {case}: wrong face set")
        for cx, pred in ((nondivisible_complex(wt), is_non_divisible),
                         (strongly_nondivisible_complex(wt),
                          is_strongly_non_divisible)):
            for f in cx.facets:
                members = sorted(f)
                for r in range(1, len(members) + 1):
                    for sub in combinations(members, r):
                        if not cx.is_face(sub) or not pred(wt, sub):
                            failures.append(f"case {case}: closure broken")

    def check_strong_implies_nondivisible(case):
        wt = random_weights(rng, max_len=7)
        heavy = [i for i, a in enumerate(wt) if a > 1]
        if not heavy:
            return
        sub = rng.sample(heavy, rng.randint(1, len(heavy)))
        if is_strongly_non_divisible(wt, sub) and not is_non_divisible(wt, sub):
            failures.append(f"case {case}: strong without plain on {sub}")

    def check_family_divisibility(case):
        rho, mu = coprime_instance(rng)
        fam = build_admissible_family(rho, mu)
        if fam is None:
            failures.append(f"case {case}: family not built")
            return
        for j, fiber in vertex_fibers(fam).items():
            for i in fiber:
                if mu[j - 1] % rho[i] != 0:
                    failures.append(
                        f"case {case}: weight {rho[i]} misses degree {mu[j - 1]}")

    def check_fiber_nondivisibility(case):
        rho, mu = coprime_instance(rng)
        fam = build_admissible_family(rho, mu)
        if fam is None:
            failures.append(f"case {case}: family not built")
            return
        for fiber in vertex_fibers(fam).values():
            if len(fiber) > 1 and not is_non_divisible(rho, fiber):
                failures.append(f"case {case}: divisible fiber {fiber}")

    def check_counting_identity(case):
        rho, mu = coprime_instance(rng)
        partition, _, deltas = construct_strong_nef_partition(rho, mu)
        if rho.count(1) != fano_index(rho, mu) + sum(deltas):
            failures.append(f"case {case}: counting identity broken")
        if not classify_partition(rho, mu, partition).strong:
            failures.append(f"case {case}: construction not strong")

    suite = (check_closures, check_strong_implies_nondivisible,
             check_family_divisibility, check_fiber_nondivisibility,
             check_counting_identity)
    for case in range(1000):
        suite[case % len(suite)](case)
    report(8, "1000 seeded invariant cases", failures)
