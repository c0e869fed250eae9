"""Exact rational parsing and display formatting.

Game values travel through the package as :class:`fractions.Fraction` so
that allocation identities (efficiency, telescoping) are equalities
rather than tolerances. Inputs arrive as decimal strings, ratio strings,
ints, Decimals, or floats; every conversion here is exact.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction

RationalLike = int | str | Fraction | Decimal | float


def parse_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings may be decimal ("1000", "-3.25", "0.6648") or a ratio of
    integers ("4150/3"). Floats convert exactly (a float is a dyadic
    rational); no rounding happens here.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational values")
    if isinstance(value, (int, Fraction, Decimal)):
        return Fraction(value)
    if isinstance(value, float):
        try:
            return Fraction(value)
        except (ValueError, OverflowError) as exc:
            raise ValueError(f"not a finite number: {value!r}") from exc
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a decimal or ratio string: {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def exact_decimal(value: Fraction) -> str | None:
    """Shortest exact decimal form, or None when one does not exist.

    A fraction has a finite decimal expansion iff its reduced denominator
    is of the form 2**a * 5**b.
    """
    den = value.denominator
    twos = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    places = max(twos, fives)
    scaled = value.numerator * 10**places // value.denominator
    if places == 0:
        return str(scaled)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    whole, frac = digits[:-places], digits[-places:]
    frac = frac.rstrip("0")
    return f"{sign}{whole}.{frac}" if frac else f"{sign}{whole}"


def exact_string(value: Fraction) -> str:
    """Exact text form: finite decimal when possible, else "p/q"."""
    dec = exact_decimal(value)
    if dec is not None:
        return dec
    return f"{value.numerator}/{value.denominator}"


def format_fixed(value: Fraction | float, places: int = 4) -> str:
    """Render with a fixed number of decimals, rounding ties to even.

    Rounding happens on the exact rational, so the rendered digits are a
    pure function of the value (display only; engines never consume this).
    """
    frac = value if isinstance(value, Fraction) else Fraction(float(value))
    q = 10**places
    scaled = frac * q
    floor = scaled.numerator // scaled.denominator
    remainder = scaled - floor
    if remainder > Fraction(1, 2) or (remainder == Fraction(1, 2) and floor % 2):
        floor += 1
    sign = "-" if floor < 0 else ""
    magnitude = abs(floor)
    if places == 0:
        return f"{sign}{magnitude}"
    return f"{sign}{magnitude // q}.{magnitude % q:0{places}d}"
