import pickle
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from refloor.qlaurent import (
    ONE,
    ZERO,
    HalfIntegerExponentError,
    QLaurent,
    Rational,
    evaluate_at_sign,
    is_palindromic,
    q_int,
    q_real_int,
)

polys = st.dictionaries(st.integers(-12, 12), st.integers(-10**6, 10**6), max_size=6).map(QLaurent)
integral_polys = st.dictionaries(
    st.integers(-6, 6).map(lambda e: 2 * e), st.integers(-10**6, 10**6), max_size=6
).map(QLaurent)


def test_q_int_small_cases():
    assert q_int(1) == ONE
    assert q_int(2) == QLaurent({-1: 1, 1: 1})
    assert q_int(3) == QLaurent({-2: 1, 0: 1, 2: 1})


@pytest.mark.parametrize("m", [0, -1, -7])
def test_q_int_rejects_nonpositive(m):
    with pytest.raises(ValueError):
        q_int(m)


@given(st.integers(1, 40))
def test_q_int_shape(m):
    p = q_int(m)
    assert len(p.terms) == m
    assert is_palindromic(p)
    assert p.at_one() == m
    assert all(c == 1 for _, c in p.terms)
    if m % 2:
        # odd q-integers are +-1 at q = -1; their squares are exactly 1
        assert evaluate_at_sign(p, -1) == (-1) ** ((m - 1) // 2)
        assert evaluate_at_sign(p * p, -1) == 1
    else:
        assert evaluate_at_sign(p * p, -1) == 0


def test_q_int_squares():
    assert q_int(2) * q_int(2) == QLaurent({-2: 1, 0: 2, 2: 1})
    assert str(q_int(3) ** 2) == "q^-2 + 2*q^-1 + 3 + 2*q + q^2"


def test_canonical_storage():
    p = QLaurent([(3, 2), (-1, 5), (3, -2), (0, 0)])
    assert p.terms == ((-1, 5),)
    assert QLaurent() == ZERO and ZERO.is_zero()
    e2s = [e for e, _ in (q_int(5) * q_int(4)).terms]
    assert e2s == sorted(set(e2s))


def test_evaluate_at_sign():
    cubic = QLaurent({-2: 1, 0: 10, 2: 1})
    assert evaluate_at_sign(cubic, 1) == 12
    assert evaluate_at_sign(cubic, -1) == 8
    assert evaluate_at_sign(q_int(3), -1) == -1
    with pytest.raises(HalfIntegerExponentError):
        evaluate_at_sign(q_int(2), -1)
    with pytest.raises(HalfIntegerExponentError):
        evaluate_at_sign(q_int(2), 1)
    with pytest.raises(ValueError):
        evaluate_at_sign(cubic, 2)
    assert q_int(2).at_one() == 2


def test_big_coefficients_stay_exact():
    big = QLaurent({0: 10**40 + 1})
    assert (big * big).coefficient(0) == (10**40 + 1) ** 2


def test_formatting_and_serialization():
    p = QLaurent({-1: 3, 0: -1, 4: 1})
    assert str(p) == "3*q^(-1/2) - 1 + q^2"
    assert str(ZERO) == "0"
    assert QLaurent.from_pairs(p.to_pairs()) == p
    assert p.to_doubled_string() == "3*q^(-1/2)+-1*q^(0/2)+1*q^(4/2)"
    assert pickle.loads(pickle.dumps(p)) == p


def test_truncate_and_mirror():
    p = QLaurent({-2: 1, 0: 2, 4: 3})
    assert p.truncate_above(0) == QLaurent({-2: 1, 0: 2})
    assert p.mirror() == QLaurent({2: 1, 0: 2, -4: 3})
    assert not is_palindromic(p)


def test_q_real_int():
    assert [q_real_int(k) for k in (1, 2, 3, 4, 5)] == [1, 2, 1, 2, 1]
    with pytest.raises(ValueError):
        q_real_int(0)


def test_rational_is_reduced():
    x = Rational(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
    assert isinstance(x, Fraction)


@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(integral_polys, integral_polys)
def test_specializations_are_ring_maps(a, b):
    for s in (1, -1):
        assert evaluate_at_sign(a * b, s) == evaluate_at_sign(a, s) * evaluate_at_sign(b, s)
        assert evaluate_at_sign(a + b, s) == evaluate_at_sign(a, s) + evaluate_at_sign(b, s)


@given(polys)
def test_palindromic_closure(a):
    sym = a + a.mirror()
    assert is_palindromic(sym)
    assert is_palindromic(sym * sym)
