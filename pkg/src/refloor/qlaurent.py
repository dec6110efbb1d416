"""Laurent polynomials in q^(1/2) with integer coefficients.

Exponents are stored doubled: the key ``e2`` stands for ``q**(e2/2)``, so
symmetric q-integers such as ``q^(1/2) + q^(-1/2)`` have integer keys.
Coefficients are Python ints (arbitrary precision).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

__all__ = [
    "QLaurent",
    "Rational",
    "HalfIntegerExponentError",
    "q_int",
    "q_real_int",
    "add",
    "mul",
    "scale",
    "evaluate_at_sign",
    "is_palindromic",
]

# Exact rationals are plain fractions; they are always reduced with a
# positive denominator.
Rational = Fraction


class HalfIntegerExponentError(ValueError):
    """A specialization q -> -1 was requested on a polynomial with q^(k/2), k odd."""


class QLaurent:
    """Immutable element of Z[q^(1/2), q^(-1/2)].

    >>> q_int(2) * q_int(2)
    QLaurent('q^-1 + 2 + q')
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict[int, int] = {}
        for e2, c in items:
            if not isinstance(e2, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be integers")
            acc[e2] = acc.get(e2, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c != 0))
        self._hash = None

    # construction helpers
    @classmethod
    def constant(cls, c: int) -> "QLaurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, e2: int, c: int = 1) -> "QLaurent":
        """``c * q^(e2/2)``."""
        return cls({e2: c})

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "QLaurent":
        """Inverse of :meth:`to_pairs`; coefficients may be ints or decimal strings."""
        return cls((int(e2), int(c)) for e2, c in pairs)

    def to_pairs(self) -> list[list]:
        """Serialized form: sorted ``[e2, "coefficient"]`` pairs."""
        return [[e2, str(c)] for e2, c in self._terms]

    # accessors
    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """Sorted ``(e2, coefficient)`` pairs, no zero coefficients."""
        return self._terms

    def coefficient(self, e2: int) -> int:
        for e, c in self._terms:
            if e == e2:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def has_integral_exponents(self) -> bool:
        return all(e2 % 2 == 0 for e2, _ in self._terms)

    def min_e2(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no terms")
        return self._terms[0][0]

    def max_e2(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no terms")
        return self._terms[-1][0]

    def integer_coefficients(self) -> dict[int, int]:
        """Map ``exponent -> coefficient`` in units of q (not q^(1/2))."""
        if not self.has_integral_exponents():
            raise HalfIntegerExponentError("polynomial has half-integer exponents")
        return {e2 // 2: c for e2, c in self._terms}

    # ring operations
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc.get(e, 0) + c
        return QLaurent(acc)

    __radd__ = __add__

    def __neg__(self):
        return QLaurent((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            return QLaurent((e, c * other) for e, c in self._terms)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return QLaurent(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __reduce__(self):
        return (QLaurent, (self._terms,))

    # specializations
    def evaluate_at_sign(self, sign: int) -> int:
        return evaluate_at_sign(self, sign)

    def at_one(self) -> int:
        """Value at q = 1 (always defined)."""
        return sum(c for _, c in self._terms)

    def mirror(self) -> "QLaurent":
        """Image under q -> 1/q."""
        return QLaurent((-e, c) for e, c in self._terms)

    def is_palindromic(self) -> bool:
        return is_palindromic(self)

    def truncate_above(self, e2_max: int) -> "QLaurent":
        """Drop every term with doubled exponent > ``e2_max``."""
        return QLaurent((e, c) for e, c in self._terms if e <= e2_max)

    # formatting
    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e2, c in self._terms:
            mono = _format_monomial(e2)
            if mono == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"QLaurent('{self}')"

    def to_doubled_string(self) -> str:
        """Flat ``c*q^(e2/2)+...`` form used in CSV output."""
        if not self._terms:
            return "0"
        return "+".join(f"{c}*q^({e2}/2)" for e2, c in self._terms)


def _format_monomial(e2: int) -> str:
    if e2 == 0:
        return "1"
    if e2 % 2 == 0:
        e = e2 // 2
        return "q" if e == 1 else f"q^{e}"
    return f"q^({e2}/2)"


def _coerce(x):
    if isinstance(x, QLaurent):
        return x
    if isinstance(x, int):
        return QLaurent.constant(x)
    return NotImplemented


ZERO = QLaurent()
ONE = QLaurent.constant(1)
Q = QLaurent.monomial(2)


def q_int(m: int) -> QLaurent:
    """Symmetric q-integer ``[m]_q = sum_{j<m} q^(j - (m-1)/2)``."""
    if not isinstance(m, int) or m <= 0:
        raise ValueError(f"q-integer needs a positive integer, got {m!r}")
    return QLaurent({2 * j - (m - 1): 1 for j in range(m)})


def q_real_int(k: int) -> int:
    """Real counterpart of a tangency order: 1 for odd k, 2 for even k."""
    if k <= 0:
        raise ValueError("tangency orders are positive")
    return 1 if k % 2 else 2


def add(a: QLaurent, b: QLaurent) -> QLaurent:
    return a + b


def mul(a: QLaurent, b: QLaurent) -> QLaurent:
    return a * b


def scale(a: QLaurent, k: int) -> QLaurent:
    return a * k


def evaluate_at_sign(p: QLaurent, q0: int) -> int:
    """Evaluate at q = +1 or q = -1.

    Raises :class:`HalfIntegerExponentError` if any exponent is a half-integer,
    since q^(1/2) has no canonical value at q = -1 (checked for q = +1 too, so
    both specializations accept the same inputs).
    """
    if q0 not in (1, -1):
        raise ValueError("q0 must be +1 or -1")
    total = 0
    for e2, c in p.terms:
        if e2 % 2:
            raise HalfIntegerExponentError(
                f"half-integer exponent q^({e2}/2) cannot be specialized at q={q0}"
            )
        total += c if q0 == 1 or (e2 // 2) % 2 == 0 else -c
    return total


def is_palindromic(p: QLaurent) -> bool:
    return p == p.mirror()
