"""Exact rational arithmetic helpers.

Rationals are plain :class:`fractions.Fraction` values, which are always kept
in lowest terms with a positive denominator.  This module adds the exact
square machinery the rest of the package relies on.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional, Union

ExactRational = Fraction
RationalLike = Union[int, Fraction]

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")

# quadratic residues modulo a few small moduli, used to reject non-squares
# before paying for an integer square root
_QR_MODULI = (64, 63, 65, 11)
_QR_TABLES = {m: frozenset((k * k) % m for k in range(m)) for m in _QR_MODULI}


def integer_sqrt(n: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(n)), n is a perfect square)``."""
    if n < 0:
        raise ValueError(f"integer_sqrt of negative number {n}")
    root = math.isqrt(n)
    return root, root * root == n


def is_square_int(n: int) -> bool:
    if n < 0:
        return False
    for m, table in _QR_TABLES.items():
        if n % m not in table:
            return False
    return integer_sqrt(n)[1]


def square_root_exact(x: RationalLike) -> Optional[Fraction]:
    """Nonnegative rational square root of ``x``, or ``None`` if there is none."""
    x = Fraction(x)
    if x < 0:
        return None
    # reduced form: x is a square iff numerator and denominator both are
    if not (is_square_int(x.numerator) and is_square_int(x.denominator)):
        return None
    return Fraction(math.isqrt(x.numerator), math.isqrt(x.denominator))


def is_square(x: RationalLike) -> bool:
    return square_root_exact(x) is not None


def height(x: RationalLike) -> int:
    """max(|numerator|, denominator) of the reduced fraction."""
    x = Fraction(x)
    return max(abs(x.numerator), x.denominator)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; anything else raises ``ValueError``."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: RationalLike) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
