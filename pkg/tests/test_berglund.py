import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import RP2_FACETS, complexes, random_flag, rp2
from loopalg.berglund import (
    DegreeTooHigh,
    EmptySet,
    NotFlag,
    SaturatedSet,
    bad_primes,
    bb_polynomial,
    bb_table,
    berglund_term,
    delta_prime,
    flag_bb_table,
    intersection_components,
    is_saturated,
    reflect,
    saturated_subsets,
)
from loopalg.complex import (
    SimplicialComplex,
    cycle,
    disjoint_points,
    full_subcomplex,
    mask_of,
    missing_faces,
    popcount,
    simplex,
    simplex_boundary,
    validate,
)
from loopalg.errors import TooLarge
from loopalg.linalg import F2, F3, F5, QQ, integral_torsion_primes
from loopalg.poly import ONE, ZERO, LaurentPoly

z = LaurentPoly.monomial(1)
M = mask_of


def definitional_saturated(members, mf):
    """Every connected T ⊆ S must contain all missing faces inside ∪T."""
    idx = [i for i in range(len(mf)) if members >> i & 1]
    for r in range(1, len(idx) + 1):
        for T in combinations(idx, r):
            seen, todo = {T[0]}, [T[0]]
            while todo:
                a = todo.pop()
                for b in T:
                    if b not in seen and mf[a] & mf[b]:
                        seen.add(b)
                        todo.append(b)
            if len(seen) != len(T):
                continue
            U = 0
            for i in T:
                U |= mf[i]
            if any(I & U == I and not members >> j & 1 for j, I in enumerate(mf)):
                return False
    return True


def test_intersection_components_examples():
    comps, c = intersection_components([M([1, 2]), M([2, 3]), M([4, 5, 6])])
    assert c == 2
    assert comps == [(M([1, 2]), M([2, 3])), (M([4, 5, 6]),)]
    assert intersection_components([M([1, 2])])[1] == 1
    assert intersection_components([M([1, 2]), M([3, 4])])[1] == 2
    with pytest.raises(EmptySet):
        intersection_components([])


def test_saturated_subsets_examples():
    assert [S.faces for S in saturated_subsets(missing_faces(simplex_boundary(3)))] == [(0b111,)]
    sat = saturated_subsets(missing_faces(disjoint_points(3)))
    assert [S.faces for S in sat] == [(0b011,), (0b101,), (0b110,), (0b011, 0b101, 0b110)]
    assert saturated_subsets(missing_faces(simplex(4))) == []


@given(complexes(max_m=6))
@settings(max_examples=80, deadline=None)
def test_saturated_subsets_match_definition(K):
    mf = missing_faces(K)
    found = {S.members for S in saturated_subsets(mf)}
    expect = {s for s in range(1, 1 << len(mf)) if definitional_saturated(s, mf)}
    assert found == expect
    for s in range(1, 1 << len(mf)):
        assert is_saturated(s, mf) == (s in expect)


def test_saturated_subsets_cap():
    with pytest.raises(TooLarge):
        saturated_subsets(missing_faces(disjoint_points(4)), max_mf=5)


def test_saturated_order_is_deterministic():
    sat = saturated_subsets(missing_faces(cycle(6)))
    keys = [(popcount(S.members), S.members) for S in sat]
    assert keys == sorted(keys)


def test_delta_prime_examples():
    single = saturated_subsets([0b111])[0]
    assert delta_prime(single).faces == frozenset([0])
    two = [S for S in saturated_subsets(missing_faces(cycle(4))) if S.c == 2][0]
    assert delta_prime(two).faces == frozenset([0, 1, 2])
    three = saturated_subsets(missing_faces(disjoint_points(3)))[-1]
    assert delta_prime(three).faces == frozenset([0, 1, 2, 4])


def test_bb_polynomial_examples():
    for m in range(2, 7):
        assert bb_polynomial(simplex_boundary(m)) == -(z ** 2)
    for m in range(1, 5):
        assert bb_polynomial(simplex(m)) == ZERO
    assert bb_polynomial(disjoint_points(3)) == -2 * z ** 3
    assert bb_polynomial(SimplicialComplex(0, {0})) == ONE


def test_bb_table_examples():
    t = bb_table(disjoint_points(3))
    assert t[0] == ONE
    for J in (0b011, 0b101, 0b110):
        assert t[J] == -(z ** 2)
    assert t[0b111] == -2 * z ** 3
    assert all(t[1 << i] == ZERO for i in range(3))

    t = bb_table(cycle(4))
    assert t[M([1, 3])] == -(z ** 2) and t[M([2, 4])] == -(z ** 2)
    assert t[M([1, 2, 3, 4])] == z ** 4
    assert all(t[J] == ZERO for J in range(1, 16) if J not in (M([1, 3]), M([2, 4]), 15))

    t = bb_table(simplex(3))
    assert t[0] == ONE and all(t[J] == ZERO for J in range(1, 8))


@given(complexes(max_m=6))
@settings(max_examples=60, deadline=None)
def test_table_shape(K):
    t = bb_table(K)
    assert t[0] == ONE
    for J, b in t.items():
        if J and b:
            assert b.low_degree >= 1 and b.degree <= popcount(J)


@given(complexes(max_m=5), st.sampled_from([QQ, F2, F3]))
@settings(max_examples=40, deadline=None)
def test_table_entries_are_full_subcomplex_polynomials(K, k):
    t = bb_table(K, k)
    for J in range(1, 1 << K.m):
        assert t[J] == bb_polynomial(full_subcomplex(K, J), k)


@given(complexes(max_m=6))
@settings(max_examples=40, deadline=None)
def test_terms_multiply_over_components(K):
    # a saturated set with several components contributes the product of
    # the terms of its components
    for S in saturated_subsets(missing_faces(K)):
        if S.c < 2:
            continue
        product = ONE
        for comp in S.components:
            union = 0
            for I in comp:
                union |= I
            product = product * berglund_term(SaturatedSet(0, comp, union, (comp,), 1))
        assert berglund_term(S) == product


def test_reflect_examples():
    m = 4
    b = 5 * z ** m + z - 2
    assert reflect(b, m) == 5 + z ** (m - 1) - 2 * z ** m
    assert reflect(ONE, 0) == ONE
    assert reflect(-(z ** 2), 3) == -z
    with pytest.raises(DegreeTooHigh):
        reflect(z ** 4, 3)
    with pytest.raises(DegreeTooHigh):
        reflect(LaurentPoly({-1: 1}), 3)


@given(st.integers(0, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(-4, 4), min_size=n + 1, max_size=n + 1))))
def test_reflect_is_an_involution(args):
    n, c = args
    b = LaurentPoly.from_list(c)
    assert reflect(reflect(b, n), n) == b


def test_flag_table_examples():
    t = flag_bb_table(disjoint_points(2))
    assert t[0b11] == -1
    assert flag_bb_table(cycle(4))[0b1111] == 1
    assert flag_bb_table(simplex(3))[0b101] == 0
    with pytest.raises(NotFlag):
        flag_bb_table(simplex_boundary(3))


def test_flag_table_matches_reflected_table():
    rng = random.Random(11)
    for _ in range(30):
        K = random_flag(rng, rng.randint(2, 6))
        reflected = bb_table(K).reflected()
        assert reflected == flag_bb_table(K)


def test_parallel_table_matches_serial():
    K = cycle(6)
    assert bb_table(K, QQ, jobs=2) == bb_table(K, QQ, jobs=1)


# -- bad primes ----------------------------------------------------------------


def test_bad_primes_examples():
    assert bad_primes(simplex_boundary(3)) == []
    assert bad_primes(rp2()) == [2]
    rng = random.Random(5)
    for _ in range(20):
        assert bad_primes(random_flag(rng, rng.randint(2, 6))) == []


def test_projective_plane_tables_differ_only_at_two():
    K = rp2()
    q = bb_table(K, QQ)
    assert bb_table(K, F3) == q and bb_table(K, F5) == q
    f2 = bb_table(K, F2)
    assert [J for J in range(64) if f2[J] != q[J]] == [63]
    assert q[63] == ZERO
    assert f2[63] == -(z ** 4) - z ** 5


def full_subcomplex_torsion(K):
    out = set()
    for J in range(1, 1 << K.m):
        out |= integral_torsion_primes(full_subcomplex(K, J))
    return out


def torsion_biased_complex(rng):
    """Relabelled projective plane with random extra facets, or a random complex."""
    perm = list(range(1, 7))
    rng.shuffle(perm)
    facets = [[perm[v - 1] for v in f] for f in RP2_FACETS]
    extra = [list(c) for c in combinations(range(1, 7), 3) if rng.random() < 0.08]
    extra += [list(c) for c in combinations(range(1, 7), 4) if rng.random() < 0.02]
    K = validate(facets + extra, 6)
    if rng.random() < 0.3:
        J = mask_of(rng.sample(range(1, 7), 5))
        K = full_subcomplex(K, J)
    return K


def test_bad_prime_search_harness():
    rng = random.Random(2024)
    hits = 0
    for _ in range(25):
        K = torsion_biased_complex(rng)
        bad = set(bad_primes(K))
        # torsion in some H(K_J; Z) changes Tor, hence some b polynomial
        assert full_subcomplex_torsion(K) <= bad
        q = bb_table(K, QQ)
        for p, k in ((2, F2), (3, F3)):
            if p not in bad:
                assert bb_table(K, k) == q
        if 2 in bad:
            hits += 1
            assert bb_table(K, F2) != q
    assert hits > 0
