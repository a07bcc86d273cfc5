import pytest
from hypothesis import given
from hypothesis import strategies as st

from loopalg.poly import ONE, ZERO, Z, LaurentPoly

polys = st.dictionaries(st.integers(-3, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_basic_arithmetic():
    p = LaurentPoly({0: 1, 2: -1})
    assert p * p == LaurentPoly({0: 1, 2: -2, 4: 1})
    assert p - p == ZERO
    assert (1 - Z ** 2) == p
    assert p.shift(-3) == LaurentPoly({-3: 1, -1: -1})
    assert p.degree == 2 and p.low_degree == 0
    assert ZERO.degree is None


def test_zero_coefficients_are_dropped():
    p = LaurentPoly({1: 0, 2: 3})
    assert p.coeffs == {2: 3}
    assert not LaurentPoly({0: 0})
    assert LaurentPoly({0: 2}) == 2


def test_to_list():
    assert LaurentPoly({1: 2, 3: -1}).to_list() == [0, 2, 0, -1]
    assert LaurentPoly({-1: 1}).to_list(low=-1) == [1]
    with pytest.raises(ValueError):
        LaurentPoly({-1: 1}).to_list()
    assert LaurentPoly.from_list([0, 2, 0, -1]) == LaurentPoly({1: 2, 3: -1})


def test_immutable():
    with pytest.raises(AttributeError):
        ONE.x = 1


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(polys, st.integers(-4, 4))
def test_shift_is_multiplication_by_monomial(a, k):
    assert a.shift(k) == a * LaurentPoly.monomial(k)


def test_pickle_roundtrip():
    import pickle

    p = LaurentPoly({-1: 2, 3: 1})
    assert pickle.loads(pickle.dumps(p)) == p
