"""Exact rational scalars and points.

All geometry and all series coefficients are :class:`fractions.Fraction`.
Floats are rejected on purpose: a float that sneaks into a vertex would
silently break the exact orbit comparisons downstream.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Union

RationalLike = Union[int, Fraction, str]

_RATIONAL_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


def as_fraction(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a Fraction, refusing inexact input."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str, strict: bool = True) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``.

    In strict mode the fraction must be reduced, the denominator positive and
    there must be no sign on zero; this is the canonical document profile.
    """
    if not strict:
        return Fraction(text.strip())
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    p = int(num)
    q = int(den) if den is not None else 1
    if math.gcd(p, q) != 1:
        raise ValueError(f"unreduced rational {text!r}")
    if sign and p == 0:
        raise ValueError(f"signed zero {text!r}")
    return Fraction(-p if sign else p, q)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def floor(value: Fraction) -> int:
    return value.numerator // value.denominator


class Point2(NamedTuple):
    """A point of the plane with exact coordinates; ordered lexicographically."""

    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "Point2":
        return cls(as_fraction(x), as_fraction(y))

    def __str__(self) -> str:
        return f"({format_rational(self.x)}, {format_rational(self.y)})"


def point(x: RationalLike, y: RationalLike) -> Point2:
    return Point2.of(x, y)


@dataclass(frozen=True)
class Interval:
    """Open interval ``(lo, hi)`` of abscissae."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError("empty interval")
