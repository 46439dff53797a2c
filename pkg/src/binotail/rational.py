"""Exact rational parsing and rendering.

Every probability in this package is a :class:`fractions.Fraction`.  This
module converts user input to exact rationals and renders rationals and
enclosures as text without ever passing through binary floating point.
"""

from __future__ import annotations

from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from numbers import Rational

from .errors import DomainError


def to_rational(value) -> Fraction:
    """Convert ``value`` to an exact :class:`Fraction`.

    Accepts ints, Fractions, Decimals, floats (converted to their exact
    binary value) and strings of the form ``"a/b"`` or ``"0.125"``.
    """
    if isinstance(value, bool):
        raise DomainError(f"expected a rational number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise DomainError(f"expected a finite number, got {value!r}")
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise DomainError(f"expected a finite number, got {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise DomainError(f"cannot interpret {value!r} as a rational number")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or an exact decimal string such as ``"0.1"`` (= 1/10)."""
    s = text.strip()
    if not s:
        raise DomainError("empty rational literal")
    try:
        q = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed rational {text!r}: expected a/b or a decimal") from exc
    return q


def is_integer(q: Fraction) -> bool:
    return q.denominator == 1


def _terminating_digits(den: int) -> int | None:
    """Number of decimal places needed for 1/den, or None if it never terminates."""
    twos = (den & -den).bit_length() - 1
    den >>= twos
    fives = 0
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    return max(twos, fives)


def format_rational(q: Fraction) -> str:
    """Exact text: a terminating decimal when one exists, otherwise ``num/den``."""
    if q.denominator == 1:
        return str(q.numerator)
    places = _terminating_digits(q.denominator)
    if places is None:
        return f"{q.numerator}/{q.denominator}"
    scaled = abs(q.numerator) * 10**places // q.denominator
    digits = str(scaled).rjust(places + 1, "0")
    sign = "-" if q < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def format_fraction(q: Fraction) -> str:
    """Always ``num/den`` (or a bare integer)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _to_decimal(q: Fraction, digits: int, rounding) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = rounding
        return Decimal(q.numerator) / Decimal(q.denominator)


def format_significant(q: Fraction, digits: int = 12) -> str:
    """Round-half-even rendering at exactly ``digits`` significant digits."""
    if q == 0:
        return "0." + "0" * (digits - 1)
    d = _to_decimal(q, digits, ROUND_HALF_EVEN)
    quantum = Decimal(1).scaleb(d.adjusted() - digits + 1)
    return f"{d.quantize(quantum):f}"


def format_bound(q: Fraction, digits: int, upward: bool) -> str:
    """Directed rounding of ``q`` to ``digits`` significant digits."""
    if q == 0:
        return "0"
    d = _to_decimal(q, digits, ROUND_CEILING if upward else ROUND_FLOOR)
    return f"{d:f}"


def format_enclosure(lo: Fraction, hi: Fraction, digits: int = 20) -> str:
    """``lo..hi`` with endpoints rounded outward to ``digits`` significant digits."""
    return f"{format_bound(lo, digits, upward=False)}..{format_bound(hi, digits, upward=True)}"
