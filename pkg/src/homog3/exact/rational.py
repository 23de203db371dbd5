"""Rational scalars: coercion, strict parsing and "p/q" formatting.

Scalars are :class:`fractions.Fraction` throughout; this module only adds the
I/O rules (no decimals, no floats) on top of it.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class RationalParseError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; decimals and exponents are rejected."""
    if isinstance(text, bool):
        raise RationalParseError(f"not a rational: {text!r}")
    if isinstance(text, Rational):
        return Fraction(text)
    if not isinstance(text, str):
        raise RationalParseError(f"expected a 'p/q' string, got {type(text).__name__}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise RationalParseError(f"not an exact rational (use 'p/q'): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise RationalParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings. Floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return parse_rational(x)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational_list(text: str) -> list[Fraction]:
    """Parse a comma separated list such as ``"1,-1/2,3"``."""
    parts = [p for p in text.split(",")]
    if any(not p.strip() for p in parts):
        raise RationalParseError(f"empty entry in list: {text!r}")
    return [parse_rational(p) for p in parts]
