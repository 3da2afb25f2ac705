"""Parsing and formatting of exact rationals.

Wire format everywhere: decimal integer or "p/q" string. Floats are rejected
on input and never produced on output.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SourceFormatError

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def parse_rational(text) -> Fraction:
    """Parse an int or "p/q" string into a Fraction."""
    if isinstance(text, bool):
        raise SourceFormatError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise SourceFormatError(f"not a rational: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise SourceFormatError(f"zero denominator: {text!r}") from None


def format_rational(q: Fraction) -> str:
    """Format a Fraction as "p" or "p/q" (canonical lowest terms)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
