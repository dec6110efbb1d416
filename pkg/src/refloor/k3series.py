"""Truncated power series in u and the K3 generating functions.

Two infinite products are expanded here, both truncated at ``u^h_max``:

    KKV:      prod_n (1-u^n)^-20 (1-q u^n)^-2 (1-q^-1 u^n)^-2
    real K3:  prod_n (1+u^n)^-(24+e_R)/2 (1-u^n)^-(24-e_R)/2

At q = -1 the first one becomes the second one with e_R = -16.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .qlaurent import ONE, ZERO, QLaurent, evaluate_at_sign, is_palindromic

__all__ = [
    "EULER_K3",
    "TruncatedSeries",
    "binomial_series",
    "kkv_coefficients",
    "real_k3_coefficients",
    "check_k3_welschinger",
]

EULER_K3 = 24


def _generalized_binomial(alpha: int, j: int) -> int:
    """C(alpha, j) for any integer alpha (negative allowed)."""
    num = 1
    for i in range(j):
        num *= alpha - i
    return num // math.factorial(j)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series ``sum_j coeffs[j] u^j`` known up to ``u^order``.

    Coefficients are QLaurent values; plain ints are promoted on construction.
    """

    order: int
    coeffs: tuple[QLaurent, ...]

    def __init__(self, order: int, coeffs=()):
        if order < 0:
            raise ValueError("order must be nonnegative")
        coeffs = [c if isinstance(c, QLaurent) else QLaurent.constant(c) for c in coeffs]
        coeffs = coeffs[: order + 1] + [ZERO] * (order + 1 - len(coeffs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def one(cls, order: int) -> "TruncatedSeries":
        return cls(order, [ONE])

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.order != self.order:
            raise ValueError("series truncated at different orders")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        n = self.order
        out = [ZERO] * (n + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(n + 1 - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TruncatedSeries(n, out)

    def __getitem__(self, j: int) -> QLaurent:
        return self.coeffs[j]

    def map(self, fn) -> "TruncatedSeries":
        return TruncatedSeries(self.order, [fn(c) for c in self.coeffs])


def binomial_series(base: QLaurent, step: int, exponent: int, order: int) -> TruncatedSeries:
    """``(1 + base * u^step)^exponent`` truncated at ``u^order``.

    ``exponent`` may be negative; the generalized binomial coefficients are
    exact integers.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    coeffs = [ZERO] * (order + 1)
    power = ONE
    for j in range(order // step + 1):
        coeffs[j * step] = power * _generalized_binomial(exponent, j)
        power = power * base
    return TruncatedSeries(order, coeffs)


def _product(factors, order: int) -> TruncatedSeries:
    acc = TruncatedSeries.one(order)
    for base, exponent in factors:
        for n in range(1, order + 1):
            acc = acc * binomial_series(base, n, exponent, order)
    return acc


def kkv_coefficients(h_max: int) -> list[QLaurent]:
    """Coefficients of u^0..u^h_max of the KKV product."""
    if h_max < 0:
        raise ValueError("h_max must be nonnegative")
    q = QLaurent.monomial(2)
    q_inv = QLaurent.monomial(-2)
    series = _product([(-ONE, -20), (-q, -2), (-q_inv, -2)], h_max)
    return list(series.coeffs)


def real_k3_coefficients(h_max: int, e_R: int) -> list[int]:
    """Coefficients of u^0..u^h_max of the real-K3 product."""
    if h_max < 0:
        raise ValueError("h_max must be nonnegative")
    if (EULER_K3 + e_R) % 2:
        raise ValueError(f"24 + e_R must be even, got e_R = {e_R}")
    plus = -(EULER_K3 + e_R) // 2
    minus = -(EULER_K3 - e_R) // 2
    series = _product([(ONE, plus), (-ONE, minus)], h_max)
    return [c.coefficient(0) for c in series.coeffs]


def check_k3_welschinger(h_max: int, e_R: int = -16) -> list[dict]:
    """Compare KKV coefficients at q = -1 with the real-K3 counts."""
    kkv = kkv_coefficients(h_max)
    real = real_k3_coefficients(h_max, e_R)
    rows = []
    for h, (poly, r) in enumerate(zip(kkv, real)):
        assert poly.has_integral_exponents() and is_palindromic(poly)
        value = evaluate_at_sign(poly, -1)
        rows.append({"h": h, "kkv_at_minus_1": value, "real_count": r, "equal": value == r})
    return rows
