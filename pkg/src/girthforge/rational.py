"""Exact rational arithmetic helpers.

Every numeric quantity that reaches an answer (LP optima, certificate
bounds, scheme ratios) is an exact rational. gmpy2 is used when present
because its mpq type is several times faster than fractions.Fraction;
the two are interchangeable for everything this package does.
"""

from __future__ import annotations

from fractions import Fraction

try:
    from gmpy2 import mpq as R

    RATIONAL_BACKEND = "gmpy2"
except ImportError:  # pragma: no cover - exercised only without gmpy2
    R = Fraction
    RATIONAL_BACKEND = "fractions"

ZERO = R(0)
ONE = R(1)


def ratio(p, q=1):
    """Exact rational p/q."""
    return R(p) / R(q) if q != 1 else R(p)


def ratio_str(x) -> str:
    """Canonical text form: "p/q", or just "p" for integers."""
    x = R(x)
    num, den = x.numerator, x.denominator
    if den == 1:
        return str(num)
    return f"{num}/{den}"


def parse_ratio(s: str):
    """Inverse of ratio_str; also accepts plain integers."""
    s = s.strip()
    if "/" in s:
        p, q = s.split("/", 1)
        return R(int(p)) / R(int(q))
    return R(int(s))


def decimal_str(x, places: int = 6) -> str:
    """Fixed-point decimal rendering, rounded half away from zero."""
    x = R(x)
    sign = "-" if x < 0 else ""
    y = -x if x < 0 else x
    scale = 10**places
    scaled = (y.numerator * scale * 2 + y.denominator) // (2 * y.denominator)
    whole, frac = divmod(scaled, scale)
    return f"{sign}{whole}.{frac:0{places}d}"
