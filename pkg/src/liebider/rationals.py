"""Exact rational scalars.

Every coefficient in the package is an arbitrary-precision rational; no
floating point is used anywhere.  gmpy2's mpq is preferred for speed, with
fractions.Fraction as a drop-in fallback.  Both reduce automatically, keep
the denominator positive, and print as "p/q" (or "p" for integers).
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as Rat

    BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as Rat

    BACKEND = "fractions"

ZERO = Rat(0)
ONE = Rat(1)


def rat(value) -> Rat:
    """Parse a rational from an int, a rational, or a "p/q" string."""
    if isinstance(value, str):
        value = value.strip()
        if "/" in value:
            num, den = value.split("/", 1)
            return Rat(int(num), int(den))
        return Rat(int(value))
    return Rat(value)


def rat_str(value) -> str:
    """Stable text form: "p/q", or "p" when the denominator is 1."""
    return str(value)


def rat_floor(value) -> int:
    return value.numerator // value.denominator
