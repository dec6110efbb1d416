from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from refloor.bps import (
    BpsResult,
    abv_absolute,
    abv_complex_count,
    abv_terms,
    gw_expansion,
    gw_expansion_absolute,
    gw_expansion_relative,
    pad_class,
    pt_series,
    relative_bps,
    relative_result,
    welschinger_relative,
)
from refloor.diagram import CurveClass, Tangency
from refloor.qlaurent import ONE, QLaurent, evaluate_at_sign, is_palindromic, q_int


def poly(*pairs):
    """Laurent polynomial from (exponent, coefficient) pairs in units of q."""
    return QLaurent({2 * e: c for e, c in pairs})


CUBIC = poly((-1, 1), (0, 10), (1, 1))
SEXTIC = poly((-4, 1), (-3, 13), (-2, 100), (-1, 547), (0, 1918), (1, 547), (2, 100), (3, 13), (4, 1))


def test_degree_one_relative():
    assert relative_bps(CurveClass(1), Tangency((1, 1), ())) == ONE
    assert relative_bps(CurveClass(1), Tangency((2,), ())) == ONE
    assert relative_bps(CurveClass(1), Tangency((), (1, 1))) == ONE


def test_relative_quartic():
    result = relative_result(CurveClass(4, (1,) * 6), Tangency((), (1, 1)))
    assert result.poly == poly((-3, 1), (-2, 13), (-1, 94), (0, 400), (1, 94), (2, 13), (3, 1))
    assert (result.gw_at_1, result.welschinger_at_minus_1) == (616, 236)
    assert welschinger_relative(CurveClass(4, (1,) * 6), Tangency((), (1, 1)), poly=result.poly) == 236


def test_welschinger_relative_rescales_even_parts():
    beta, t = CurveClass(1), Tangency((), (2,))
    assert welschinger_relative(beta, t) == Fraction(evaluate_at_sign(relative_bps(beta, t), -1))


def test_pad_class():
    assert pad_class(CurveClass(3), 6) == CurveClass(3, (0,) * 6)
    sextic = CurveClass(6, (2,) * 6)
    assert pad_class(sextic, 6) == sextic
    with pytest.raises(ValueError):
        pad_class(sextic, 5)


def test_abv_known_values():
    r = abv_absolute(CurveClass(6, (2,) * 6))
    assert r.poly == SEXTIC and (r.gw_at_1, r.welschinger_at_minus_1) == (3240, 1000)
    r = abv_absolute(pad_class(CurveClass(3), 6))
    assert r.poly == CUBIC and (r.gw_at_1, r.welschinger_at_minus_1) == (12, 8)
    assert abv_absolute(CurveClass(1)).poly == ONE


def test_abv_terms_of_the_sextic():
    terms = abv_terms(CurveClass(6, (2,) * 6))
    assert [(k, b, str(c), t.nu) for k, b, c, t in terms] == [
        (0, 1, "6,2,2,2,2,2,2", ()),
        (1, 2, "4,1,1,1,1,1,1", (1, 1)),
        (2, 6, "2,0,0,0,0,0,0", (1, 1, 1, 1)),
    ]


@pytest.mark.parametrize(
    "d, known_gw, known_welschinger",
    [(1, 1, 1), (2, 1, 1), (3, 12, 8), (4, 620, 240), (5, 87304, 18264)],
)
def test_plane_curves(d, known_gw, known_welschinger):
    r = abv_absolute(CurveClass(d))
    assert (r.gw_at_1, r.welschinger_at_minus_1) == (known_gw, known_welschinger)


def test_abv_rejections():
    with pytest.raises(ValueError):
        abv_absolute(CurveClass(3, (1,) * 7))
    with pytest.raises(ValueError):
        abv_absolute(CurveClass(2, (5,)))
    with pytest.raises(ValueError):
        abv_absolute(CurveClass(3, (-1,)))
    with pytest.raises(ValueError):
        abv_absolute(CurveClass(3), surface_n=7)


_SMALL_CLASSES = [
    CurveClass(d, a)
    for d in range(1, 5)
    for a in [(), (1,), (1, 1), (1, 1, 1), (2,), (2, 1), (1,) * 5, (2, 2, 1, 1), (2,) * 6, (3,)]
    if 3 * d - sum(a) - 1 >= 0 and 2 * d - sum(a) >= 0
]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(_SMALL_CLASSES))
def test_absolute_outputs_are_well_formed(beta):
    r = abv_absolute(beta)
    assert is_palindromic(r.poly) and r.poly.has_integral_exponents()
    assert all(c > 0 for _, c in r.poly.terms)
    assert r.gw_at_1 >= abs(r.welschinger_at_minus_1)
    assert r.gw_at_1 == abv_complex_count(pad_class(beta, 6))


def test_result_json_round_trip():
    r = abv_absolute(CurveClass(3))
    assert BpsResult.from_dict(r.to_dict()) == r
    rel = relative_result(CurveClass(2), Tangency((1,), (2, 1)))
    data = rel.to_dict()
    assert data["format"] == 1 and data["tangency"] == {"mu": [1], "nu": [2, 1]}
    assert BpsResult.from_dict(data) == rel


def test_pt_series():
    assert pt_series(ONE, 2, 5) == poly((1, -1), (2, 1))
    assert pt_series(ONE, 1, 5) == poly((1, -1))
    one_minus_q = poly((0, 1), (1, -1))
    assert pt_series(CUBIC, 8, 1) == poly((1, -1)) * one_minus_q**7 * CUBIC
    # m_beta = 0: geometric series, exact through the truncation order
    assert pt_series(ONE, 0, 4) == poly((1, -1), (2, -1), (3, -1), (4, -1))
    with pytest.raises(ValueError):
        pt_series(q_int(2), 3, 2)


def test_gw_expansion_sin_series():
    assert gw_expansion(ONE, [1], 1, 3) == [1, Fraction(-1, 24), Fraction(1, 1920), Fraction(-1, 322560)]
    assert gw_expansion(ONE, [], 0, 3) == [1, 0, 0, 0]


def test_gw_expansion_genus_zero_is_value_at_one():
    for bps, m in [(CUBIC, 8), (SEXTIC, 5), (ONE, 2)]:
        assert gw_expansion_absolute(bps, m, 2)[0] == evaluate_at_sign(bps, 1)
    assert gw_expansion_absolute(CUBIC, 8, 0) == [12]
    # m_beta = 0 uses an inverse sine factor
    g = gw_expansion_absolute(ONE, 0, 1)
    assert g == [1, Fraction(1, 24)]


def test_gw_expansion_relative_degree_one():
    assert gw_expansion_relative(ONE, CurveClass(1), Tangency((1, 1), ()), 1) == [1, Fraction(-1, 24)]
    assert gw_expansion_relative(ONE, CurveClass(1), Tangency((2,), ()), 1) == [1, Fraction(-1, 8)]


def test_gw_expansion_rejects_bad_input():
    with pytest.raises(ValueError):
        gw_expansion(poly((1, 1)), [1], 1, 2)
    with pytest.raises(ValueError):
        gw_expansion(ONE, [0], 1, 2)
    with pytest.raises(ValueError):
        gw_expansion(ONE, [1], 1, -1)
