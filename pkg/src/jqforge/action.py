"""Action of the divided-power operations on polynomial rings.

The total operation sends each variable generator x to x + x^2 and extends
multiplicatively; its graded piece of degree k raises a monomial's degree by
exactly k.  On a monomial the piece distributes across the variables with a
product of binomial coefficients, which is the only formula used here, so
everything stays exact over the rationals.

Words act by composition with the rightmost entry applied first, matching
the concatenation product of the operator algebra.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, UndefinedError
from .poly import Polynomial
from .scalar2 import binom


def _splits(exps, k):
    """Yield (coefficient, raised exponent tuple) over ways to spread k.

    Each variable with exponent e can absorb 0..e units; absorbing j units
    multiplies by C(e, j) and raises the exponent by j.  Zero-coefficient
    branches are pruned by the range bound.
    """
    n = len(exps)

    def rec(pos, remaining, coeff, acc):
        if pos == n:
            if remaining == 0:
                yield coeff, tuple(acc)
            return
        e = exps[pos]
        top = min(e, remaining)
        if sum(exps[pos:]) < remaining:
            return
        for j in range(top + 1):
            acc.append(e + j)
            yield from rec(pos + 1, remaining - j, coeff * binom(e, j), acc)
            acc.pop()

    yield from rec(0, k, 1, [])


def apply_jq(k: int, f: Polynomial) -> Polynomial:
    """Apply the degree-k operation to f, term by term."""
    if k < 0:
        raise DomainError("operation degree must be nonnegative")
    if k == 0:
        return f
    terms = {}
    for exps, c in f.terms.items():
        for coeff, raised in _splits(exps, k):
            terms[raised] = terms.get(raised, Fraction(0)) + c * coeff
    return Polynomial(f.arity, terms)


def apply_total(f: Polynomial, max_deg=None) -> Polynomial:
    """Apply the full operation: sum of all graded pieces.

    On a polynomial of degree d only pieces up to degree d contribute, so the
    sum is finite.  max_deg truncates the output degree when given.
    """
    top = f.degree()
    out = Polynomial.zero(f.arity)
    for k in range(0, max(top, 0) + 1):
        out = out + apply_jq(k, f)
    if max_deg is not None:
        out = Polynomial(f.arity, {e: c for e, c in out.terms.items() if sum(e) <= max_deg})
    return out


def apply_word(word, f: Polynomial) -> Polynomial:
    """Apply a composite word, rightmost factor first."""
    out = f
    for k in reversed(tuple(word)):
        out = apply_jq(k, out)
    return out


def apply_psi_q(q, f: Polynomial) -> Polynomial:
    """Apply the q-weighted total operation: sum over k of q^k times the k-piece."""
    q = Fraction(q)
    top = f.degree()
    out = Polynomial.zero(f.arity)
    power = Fraction(1)
    for k in range(0, max(top, 0) + 1):
        out = out + power * apply_jq(k, f)
        power *= q
    return out


def jq_on_inverse_monomial(k: int) -> tuple:
    """Closed form on the formal inverse generator: returns (sign, exponent shift).

    The degree-k piece sends the inverse generator to (-1)^k times the
    monomial of degree k - 1... encoded as the pair ((-1)^k, k - 1).
    """
    if k < 0:
        raise DomainError("operation degree must be nonnegative")
    return ((-1) ** k, k - 1)


def apply_jq_neg(k: int, m: int) -> Fraction:
    """Coefficient 1/C(m-k, k) of the formal preimage of the m-th power.

    Inverting the degree-k piece on a single power gives, up to an omitted
    constant of integration, the monomial of degree m-k scaled by this
    coefficient.  The closed form only applies when C(m-k, k) is nonzero,
    which under the precondition m > k means m - k >= k.
    """
    if k <= 0 or m <= 0:
        raise DomainError("need k >= 1 and m >= 1")
    c = binom(m - k, k) if m - k >= 0 else 0
    if c == 0:
        raise UndefinedError(f"closed form undefined for k={k}, m={m}")
    return Fraction(1, c)


def apply_conj_total(f: Polynomial, order: int):
    """Solve for h with (total operation)(h) = f, truncated at the given degree.

    The degree-d part of the equation reads h_d = f_d - sum over k >= 1 of
    the k-piece applied to h_(d-k), which determines h degree by degree.
    Returns a truncated series since the inverse is generally infinite.
    """
    from .series import TruncatedSeries

    if order < 0:
        raise DomainError("order must be nonnegative")
    parts = {}
    for d in range(order + 1):
        acc = f.graded_part(d)
        for k in range(1, d + 1):
            prev = parts.get(d - k)
            if prev is not None and prev:
                acc = acc - apply_jq(k, prev).graded_part(d)
        if acc:
            parts[d] = acc
    terms = {}
    for part in parts.values():
        terms.update(part.terms)
    return TruncatedSeries(arity=f.arity, order=order, terms=terms, center=None)
