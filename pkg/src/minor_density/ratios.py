"""Exact rational helpers: parsing, formatting and the mediant-style bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def fmt(x: Fraction) -> str:
    """``p/q`` in lowest terms, or a bare integer when ``q == 1``."""
    return str(Fraction(x))


def parse_rational(text: str) -> Fraction:
    try:
        value = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"not an exact rational: {text!r}") from None
    if "." in text or "e" in text.lower():
        raise ValueError(f"decimal input is not exact, write p/q: {text!r}")
    return value


@dataclass(frozen=True)
class MediantBound:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool


def mediant_bound(a, b, c, d, e, f) -> MediantBound:
    """Compare ``(a+b+c)/(d+e+f)`` with ``max((a+2b)/(d+2e), (a+2c)/(d+2f))``.

    The left side is a weighted average of the two fractions on the right,
    so it never exceeds their maximum and meets it only when they coincide.
    """
    a, b, c, d, e, f = (Fraction(x) for x in (a, b, c, d, e, f))
    if min(a, b, c, d, e, f) < 0:
        raise ValueError("mediant_bound arguments must be non-negative")
    if d + 2 * e <= 0 or d + 2 * f <= 0 or d + e + f <= 0:
        raise ValueError("mediant_bound denominators must be positive")
    lhs = (a + b + c) / (d + e + f)
    rhs = max((a + 2 * b) / (d + 2 * e), (a + 2 * c) / (d + 2 * f))
    return MediantBound(lhs, rhs, lhs <= rhs, lhs == rhs)
