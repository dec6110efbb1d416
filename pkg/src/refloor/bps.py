"""Relative and absolute BPS polynomials and their specializations.

Relative BPS polynomials of the plane blown up at points of a conic are sums
of refined floor-diagram counts. Absolute BPS polynomials of the cubic
surface S_6 (and of S_n, n <= 6, by padding the class with zeros) follow
from the refined degeneration sum over k:

    BPS(beta) = sum_k C(c + 2k, k) * BPS_rel(beta - k*conic, (empty, 1^(c + 2k)))

with ``c = beta . conic = 2d - sum(a)`` and ``beta - k*conic = (d-2k; a_i-k)``.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .diagram import CurveClass, Tangency
from .enumeration import FORMAT_VERSION, check_class_and_tangency, tally
from .qlaurent import ZERO, QLaurent, evaluate_at_sign, is_palindromic, q_real_int

__all__ = [
    "ABV_SURFACE_N",
    "BpsResult",
    "relative_bps",
    "relative_result",
    "welschinger_relative",
    "pad_class",
    "abv_terms",
    "abv_absolute",
    "abv_complex_count",
    "pt_series",
    "gw_expansion",
    "gw_expansion_absolute",
    "gw_expansion_relative",
]

log = logging.getLogger(__name__)

ABV_SURFACE_N = 6


@dataclass(frozen=True)
class BpsResult:
    poly: QLaurent
    gw_at_1: int
    welschinger_at_minus_1: int
    beta: CurveClass
    tangency: Tangency | None = None
    surface_n: int | None = None

    @classmethod
    def from_poly(cls, poly: QLaurent, beta: CurveClass, **kw) -> "BpsResult":
        return cls(poly, evaluate_at_sign(poly, 1), evaluate_at_sign(poly, -1), beta, **kw)

    def to_dict(self) -> dict:
        out = {
            "format": FORMAT_VERSION,
            "class": {"d": self.beta.d, "a": list(self.beta.a)},
        }
        if self.tangency is not None:
            out["tangency"] = {"mu": list(self.tangency.mu), "nu": list(self.tangency.nu)}
        else:
            out["surface_n"] = self.surface_n
        out["poly"] = self.poly.to_pairs()
        out["q1"] = self.gw_at_1
        out["qm1"] = self.welschinger_at_minus_1
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "BpsResult":
        beta = CurveClass(data["class"]["d"], tuple(data["class"]["a"]))
        poly = QLaurent.from_pairs(data["poly"])
        if "tangency" in data:
            t = Tangency(tuple(data["tangency"]["mu"]), tuple(data["tangency"]["nu"]))
            return cls(poly, data["q1"], data["qm1"], beta, tangency=t)
        return cls(poly, data["q1"], data["qm1"], beta, surface_n=data["surface_n"])


# ---------------------------------------------------------------------------
# relative invariants


def relative_bps(beta: CurveClass, t: Tangency, *, workers: int = 1, cache_dir=None) -> QLaurent:
    """Refined count of marked floor diagrams of class ``beta`` and type ``t``."""
    total = ZERO
    for row in tally(beta, t, workers=workers, cache_dir=cache_dir):
        total = total + row.refined
    return total


def relative_result(beta: CurveClass, t: Tangency, *, workers: int = 1, cache_dir=None) -> BpsResult:
    poly = relative_bps(beta, t, workers=workers, cache_dir=cache_dir)
    return BpsResult.from_poly(poly, beta, tangency=t)


def welschinger_relative(
    beta: CurveClass, t: Tangency, *, poly: QLaurent | None = None, workers: int = 1, cache_dir=None
) -> Fraction:
    """Relative Welschinger count: BPS(-1) * prod([nu_j]_R / nu_j)."""
    if poly is None:
        poly = relative_bps(beta, t, workers=workers, cache_dir=cache_dir)
    value = Fraction(evaluate_at_sign(poly, -1))
    for x in t.nu:
        value *= Fraction(q_real_int(x), x)
    return value


# ---------------------------------------------------------------------------
# absolute invariants


def pad_class(beta: CurveClass, n_target: int) -> CurveClass:
    """Same class viewed on a surface with more blown-up points (a_i = 0)."""
    if n_target < beta.n:
        raise ValueError(f"cannot pad a class on {beta.n} points down to {n_target}")
    return CurveClass(beta.d, beta.a + (0,) * (n_target - beta.n))


def _check_absolute(beta: CurveClass) -> CurveClass:
    if beta.n > ABV_SURFACE_N:
        raise ValueError(f"absolute BPS polynomials are only available for n <= {ABV_SURFACE_N}")
    beta = pad_class(beta, ABV_SURFACE_N)
    if any(x < 0 for x in beta.a):
        raise ValueError(f"class {beta} has a negative multiplicity")
    if beta.m_beta < 0:
        raise ValueError(f"class {beta} has m_beta = {beta.m_beta} < 0")
    if beta.conic_degree < 0:
        raise ValueError(f"class {beta} meets the conic negatively")
    return beta


def abv_terms(beta: CurveClass) -> list[tuple[int, int, CurveClass, Tangency]]:
    """The (k, binomial, class, tangency) triples entering the ABV sum.

    Terms with d - 2k < 1 or some a_i - k < 0 admit no marked diagram and are
    left out.
    """
    beta = _check_absolute(beta)
    c = beta.conic_degree
    k_max = min((beta.d - 1) // 2, min(beta.a))
    terms = []
    for k in range(k_max + 1):
        shifted = CurveClass(beta.d - 2 * k, tuple(x - k for x in beta.a))
        width = c + 2 * k
        terms.append((k, math.comb(width, k), shifted, Tangency((), (1,) * width)))
    return terms


def abv_absolute(beta: CurveClass, *, surface_n: int | None = None, workers: int = 1, cache_dir=None) -> BpsResult:
    """Absolute BPS polynomial of ``beta`` on S_n, n <= 6, via the ABV sum.

    Also accepts classes with ``beta . conic == 0`` (the k = 0 term then has
    no tangency points).
    """
    n = beta.n if surface_n is None else surface_n
    if n > ABV_SURFACE_N:
        raise ValueError(f"absolute BPS polynomials are only available for n <= {ABV_SURFACE_N}")
    beta_n = pad_class(beta, n)
    poly = ZERO
    for k, binom, shifted, t in abv_terms(beta_n):
        term = relative_bps(shifted, t, workers=workers, cache_dir=cache_dir)
        log.debug("ABV k=%d: %d * %s", k, binom, term)
        poly = poly + term * binom
    return BpsResult.from_poly(poly, beta_n, surface_n=n)


def abv_complex_count(beta: CurveClass, *, workers: int = 1, cache_dir=None) -> int:
    """Unrefined ABV sum using only the complex column of each tally."""
    total = 0
    for _, binom, shifted, t in abv_terms(beta):
        total += binom * sum(r.complex for r in tally(shifted, t, workers=workers, cache_dir=cache_dir))
    return total


# ---------------------------------------------------------------------------
# conversions


def pt_series(bps: QLaurent, m_beta: int, truncation: int) -> QLaurent:
    """Stable-pairs generating function ``-q (1-q)^(m_beta-1) * bps``.

    For ``m_beta == 0`` the factor ``1/(1-q)`` is a geometric series; the
    result is then exact in every power ``q^e`` with ``e <= truncation`` and
    all higher powers are dropped.
    """
    if not bps.has_integral_exponents():
        raise ValueError("stable-pairs series needs integral exponents")
    if m_beta < 0:
        raise ValueError("m_beta must be nonnegative")
    minus_q = QLaurent.monomial(2, -1)
    one_minus_q = QLaurent({0: 1, 2: -1})
    if m_beta >= 1:
        return minus_q * one_minus_q ** (m_beta - 1) * bps
    head = minus_q * bps
    if head.is_zero():
        return head
    lowest = head.min_e2() // 2
    terms = max(0, truncation - lowest + 1)
    geometric = QLaurent({2 * j: 1 for j in range(terms)})
    return (head * geometric).truncate_above(2 * truncation)


def _sin_series(k: int, order: int) -> list[Fraction]:
    """Coefficients of (2/k) sin(k u / 2) / u up to u^order."""
    out = [Fraction(0)] * (order + 1)
    half = Fraction(k, 2)
    for j in range(order // 2 + 1):
        out[2 * j] = Fraction((-1) ** j) * half ** (2 * j) / math.factorial(2 * j + 1)
    return out


def _mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = len(a)
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        if x:
            for j in range(n - i):
                out[i + j] += x * b[j]
    return out


def _inverse(a: list[Fraction]) -> list[Fraction]:
    if a[0] == 0:
        raise ZeroDivisionError("series with zero constant term")
    out = [Fraction(0)] * len(a)
    out[0] = 1 / a[0]
    for n in range(1, len(a)):
        out[n] = -sum(a[i] * out[n - i] for i in range(1, n + 1)) / a[0]
    return out


def _cos_series(bps: QLaurent, order: int) -> list[Fraction]:
    """bps(e^{iu}) as a real power series in u (requires palindromy)."""
    out = [Fraction(0)] * (order + 1)
    for e2, c in bps.terms:
        a = Fraction(e2, 2)
        for j in range(order // 2 + 1):
            out[2 * j] += c * Fraction((-1) ** j) * a ** (2 * j) / math.factorial(2 * j)
    return out


def gw_expansion(
    bps: QLaurent,
    sin_factors: Sequence[int],
    shift: int,
    g_max: int,
    *,
    inverse_sin_factors: Sequence[int] = (),
) -> list[Fraction]:
    """Genus expansion of a BPS polynomial under q = e^{iu}.

    Expands ``prod_k (2/k) sin(k u/2) * prod_k' ((2/k') sin(k' u/2))^-1 * bps(e^{iu})``
    as an exact Laurent series in u and returns the coefficients of
    ``u^(2g + shift)`` for ``g = 0..g_max``.
    """
    if g_max < 0:
        raise ValueError("g_max must be nonnegative")
    if not is_palindromic(bps):
        raise ValueError("genus expansion needs a palindromic polynomial (q -> 1/q symmetric)")
    if any(k <= 0 for k in (*sin_factors, *inverse_sin_factors)):
        raise ValueError("sin factor multiplicities must be positive")
    lead = len(sin_factors) - len(inverse_sin_factors)
    order = max(0, 2 * g_max + shift - lead)
    series = _cos_series(bps, order)
    for k in sin_factors:
        series = _mul(series, _sin_series(k, order))
    for k in inverse_sin_factors:
        series = _mul(series, _inverse(_sin_series(k, order)))
    out = []
    for g in range(g_max + 1):
        idx = 2 * g + shift - lead
        out.append(series[idx] if 0 <= idx <= order else Fraction(0))
    return out


def gw_expansion_absolute(bps: QLaurent, m_beta: int, g_max: int) -> list[Fraction]:
    """GW_g of a surface: sum_g GW_g u^(2g-1+m) = (2 sin(u/2))^(m-1) bps(e^{iu})."""
    if m_beta < 0:
        raise ValueError("m_beta must be nonnegative")
    if m_beta >= 1:
        return gw_expansion(bps, [1] * (m_beta - 1), m_beta - 1, g_max)
    return gw_expansion(bps, [], -1, g_max, inverse_sin_factors=[1])


def gw_expansion_relative(bps: QLaurent, beta: CurveClass, t: Tangency, g_max: int) -> list[Fraction]:
    """Relative GW_g from a relative BPS polynomial.

    sum_g GW_g u^(2g-2+d+l(mu)+l(nu)) equals the product of
    (1/k) 2 sin(k u/2) over all tangency orders, (2 sin(u/2))^(d-2) and bps.
    """
    check_class_and_tangency(beta, t)
    factors = list(t.mu) + list(t.nu)
    shift = beta.d - 2 + len(t.mu) + len(t.nu)
    if beta.d >= 2:
        return gw_expansion(bps, factors + [1] * (beta.d - 2), shift, g_max)
    return gw_expansion(bps, factors, shift, g_max, inverse_sin_factors=[1])
