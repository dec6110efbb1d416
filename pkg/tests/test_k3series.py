import pytest
from hypothesis import given, settings, strategies as st

from refloor.k3series import (
    TruncatedSeries,
    binomial_series,
    check_k3_welschinger,
    kkv_coefficients,
    real_k3_coefficients,
)
from refloor.qlaurent import ONE, QLaurent, evaluate_at_sign, is_palindromic


def test_kkv_first_coefficients():
    coeffs = kkv_coefficients(2)
    assert coeffs[0] == ONE
    assert coeffs[1] == QLaurent({-2: 2, 0: 20, 2: 2})
    assert coeffs[2] == QLaurent({-4: 3, -2: 42, 0: 234, 2: 42, 4: 3})


def test_kkv_at_one_gives_unrefined_k3_counts():
    # coefficients of prod (1-u^n)^-24
    assert [c.at_one() for c in kkv_coefficients(5)] == [1, 24, 324, 3200, 25650, 176256]


def test_kkv_coefficients_are_palindromic_and_positive():
    for c in kkv_coefficients(8):
        assert is_palindromic(c) and c.has_integral_exponents()
        assert all(x > 0 for _, x in c.terms)


def test_real_k3_examples():
    assert real_k3_coefficients(0, -16) == [1]
    assert real_k3_coefficients(1, -16)[1] == 16
    assert real_k3_coefficients(1, 24)[1] == -24
    with pytest.raises(ValueError):
        real_k3_coefficients(3, -15)
    with pytest.raises(ValueError):
        kkv_coefficients(-1)


def test_check_up_to_ten():
    rows = check_k3_welschinger(10)
    assert [r["h"] for r in rows] == list(range(11))
    assert all(r["equal"] for r in rows)
    assert rows[1] == {"h": 1, "kkv_at_minus_1": 16, "real_count": 16, "equal": True}


def test_check_detects_other_real_structures():
    rows = check_k3_welschinger(2, e_R=0)
    assert not all(r["equal"] for r in rows)


def test_binomial_series():
    s = binomial_series(QLaurent.constant(-1), 1, -2, 4)  # (1-u)^-2
    assert [c.at_one() for c in s.coeffs] == [1, 2, 3, 4, 5]
    s = binomial_series(QLaurent.constant(1), 2, 3, 7)  # (1+u^2)^3
    assert [c.at_one() if not c.is_zero() else 0 for c in s.coeffs] == [1, 0, 3, 0, 3, 0, 1, 0]


def test_orders_must_match():
    with pytest.raises(ValueError):
        TruncatedSeries(2, [1]) * TruncatedSeries(3, [1])


coeff = st.dictionaries(st.integers(-4, 4), st.integers(-50, 50), max_size=3).map(QLaurent)
series = st.lists(coeff, min_size=0, max_size=6).map(lambda cs: TruncatedSeries(5, cs))


@settings(max_examples=60, deadline=None)
@given(series, series, series)
def test_series_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * TruncatedSeries.one(5) == a


@given(series, series)
def test_truncation_discards_high_orders(a, b):
    full = [QLaurent()] * 11
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            full[i + j] = full[i + j] + x * y
    assert list((a * b).coeffs) == full[:6]


def test_q_minus_one_specialisation_matches_real_product():
    for e_real in (-16,):
        kkv = [evaluate_at_sign(c, -1) for c in kkv_coefficients(6)]
        assert kkv == real_k3_coefficients(6, e_real)
