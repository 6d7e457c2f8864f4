"""Rational scalars through a 2-adic lens.

Scalars are plain fractions.Fraction values.  This module supplies the
2-adic valuation and absolute value, the ring-of-integers test (odd
denominator), reduction mod 2, binomial coefficients, and the rational
parse/format pair used by every grammar in the package.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DomainError, NotInZ2Error, ParseError

INF = math.inf

_RAT_RE = re.compile(r"^([+-]?\d+)(?:\s*/\s*(\d+))?$")


def v2_int(n: int) -> int:
    """2-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is infinite; handle separately")
    return (n & -n).bit_length() - 1


def valuation_and_abs(r) -> tuple:
    """Return (v, |r|_2).  Zero maps to (inf, Fraction(0))."""
    r = Fraction(r)
    if r == 0:
        return INF, Fraction(0)
    v = v2_int(r.numerator) - v2_int(r.denominator)
    if v >= 0:
        return v, Fraction(1, 1 << v)
    return v, Fraction(1 << (-v))


def v2(r):
    """2-adic valuation; inf for zero."""
    return valuation_and_abs(r)[0]


def two_adic_abs(r) -> Fraction:
    return valuation_and_abs(r)[1]


def in_z2(r) -> bool:
    """True when r has odd denominator, i.e. lies in the 2-adic integers."""
    return Fraction(r).denominator % 2 == 1


def mod2_reduce(r) -> int:
    """Reduce an odd-denominator rational mod 2, giving 0 or 1.

    p/q with q odd reduces to p * q^(-1) in F_2, which is just p mod 2.
    """
    r = Fraction(r)
    if r.denominator % 2 == 0:
        raise NotInZ2Error(f"{r} has even denominator")
    return r.numerator % 2


def binom(n: int, k: int) -> int:
    """Binomial coefficient with the convention C(n, k) = 0 for k < 0 or k > n.

    A negative upper index is rejected rather than extended.
    """
    if n < 0:
        raise DomainError(f"binomial upper index must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def parse_scalar(text: str) -> Fraction:
    """Parse 'p' or 'p/q' with q positive."""
    m = _RAT_RE.match(text.strip())
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_scalar(r) -> str:
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def two_adic_digits(r, k: int) -> str:
    """First k digits of the 2-adic expansion of r, least significant first.

    Only defined for 2-adic integers.  Returns a string like '011010...'
    where position i holds the coefficient of 2^i.
    """
    r = Fraction(r)
    if not in_z2(r):
        raise NotInZ2Error(f"{r} is not a 2-adic integer")
    if k < 0:
        raise DomainError("digit count must be nonnegative")
    num, den = r.numerator, r.denominator
    digits = []
    for _ in range(k):
        bit = (num * pow(den, -1, 2)) % 2
        digits.append(str(bit))
        num = (num - bit * den) // 2
    return "".join(digits)
