"""Exact rationals backed by GMP.

Every rational in the package is a ``gmpy2.mpq``: always reduced, with a
positive denominator, and never rounded.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC

import gmpy2
from gmpy2 import mpq

Rational = type(mpq(0))

ZERO = mpq(0)
ONE = mpq(1)


def Q(value, den=None) -> Rational:
    """Coerce ``value`` (int, str "p/q", Fraction, mpq) to an exact rational."""
    if den is not None:
        return mpq(value, den)
    if isinstance(value, Rational):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational literal")
        try:
            return mpq(text)
        except ValueError as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, _RationalABC):
        return mpq(int(value.numerator), int(value.denominator))
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def is_rational(value) -> bool:
    return isinstance(value, (Rational, int)) and not isinstance(value, bool)


def fmt(q) -> str:
    """Serialize as "p/q" (or "p" for integers)."""
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse(text: str) -> Rational:
    return Q(text)


def to_float(q) -> float:
    return float(Q(q))


def is_perfect_power(q, k: int):
    """Return the rational k-th root of ``q`` if it is one, else None."""
    q = Q(q)
    if q < 0 and k % 2 == 0:
        return None
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    rn, exact_n = gmpy2.iroot(num, k)
    rd, exact_d = gmpy2.iroot(den, k)
    if exact_n and exact_d:
        return mpq(sign * int(rn), int(rd))
    return None
