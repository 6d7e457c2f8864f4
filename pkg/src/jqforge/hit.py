"""Hit-problem deciders: who is in the image of the positive-degree operations.

A polynomial f is hit when f = sum of Jq^i applied to cofactors with
2-adically integral coefficients, i ranging over positive degrees.  For a
single power of one variable the decision reduces to a binomial
valuation; the general graded case is a 2-adic lattice membership over
monomial columns.  Positive decisions return certificates that are
re-verified before being handed back.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .action import apply_jq, apply_word
from .errors import DomainError
from . import linalg
from .opalg import sq_on_f2
from .poly import Polynomial, format_poly, monomials_upto
from .relations import words_of_degree
from .scalar2 import INF, binom, in_z2, v2


@dataclass
class HitCertificate:
    pairs: list

    def reconstruct(self, arity: int) -> Polynomial:
        total = Polynomial.zero(arity)
        for k, cofactor in self.pairs:
            total = total + apply_jq(k, cofactor)
        return total

    def witness_json(self):
        return [
            {"k": k, "cofactor": format_poly(cof)}
            for k, cof in sorted(self.pairs, key=lambda p: p[0])
        ]


def decision_json(hit: bool, certificate=None) -> str:
    payload = {"hit": hit}
    if hit and certificate is not None:
        payload["witness"] = certificate.witness_json()
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def min_hit_valuation(d: int) -> object:
    """Least 2-adic valuation among the single-variable column coefficients.

    a*x^d is hit exactly when v2(a) reaches this; degree 1 has no columns
    at all, so the value there is infinite.
    """
    if d < 1:
        raise DomainError("degree must be positive")
    best = INF
    for i in range(1, d):
        c = binom(d - i, i)
        if c:
            v = v2(Fraction(c))
            if v < best:
                best = v
    return best


def _check_input(f: Polynomial):
    if not f.terms:
        raise DomainError("decide per graded part; zero input")
    if not f.is_homogeneous():
        raise DomainError("decide per graded part; input is not homogeneous")
    d = f.degree()
    if d < 1:
        raise DomainError("degree must be positive")
    if not all(in_z2(c) for c in f.terms.values()):
        raise DomainError("coefficients must be 2-adic integers")
    return d


def _single_power_certificate(f: Polynomial, d: int, cap):
    """Exact certificate ladder for a*x^d in one variable.

    Prefers the smallest operator index with an integer cofactor, then
    the smallest with a 2-adically integral one; this keeps certificates
    in the shape worked examples use.
    """
    (exps, a), = f.terms.items()
    top = d if cap is None else min(d, cap + 1)
    fallback = None
    for i in range(1, top):
        c = binom(d - i, i)
        if c == 0:
            continue
        ratio = a / c
        cofactor = Polynomial(1, {(d - i,): ratio})
        if ratio.denominator == 1:
            return HitCertificate([(i, cofactor)])
        if fallback is None and in_z2(ratio):
            fallback = HitCertificate([(i, cofactor)])
    return fallback


def hit_decide_graded(f: Polynomial, precision_j=None):
    """Decide 2-adic hit membership in the degree of f, with a certificate.

    precision_j, when given, caps the operator indices allowed in the
    search; the default uses every positive index below the degree.
    """
    d = _check_input(f)
    if precision_j is not None and precision_j < 1:
        raise DomainError("precision cap must be positive")
    if f.arity == 1 and len(f.terms) == 1:
        cert = _single_power_certificate(f, d, precision_j)
        if cert is None:
            return False, None
        assert cert.reconstruct(1) == f
        return True, cert
    top = d if precision_j is None else min(d, precision_j + 1)
    gens = []
    for i in range(1, top):
        for mu in monomials_upto(f.arity, d - i):
            if sum(mu) != d - i:
                continue
            col = apply_jq(i, Polynomial.monomial(mu))
            if col.terms:
                gens.append(((i, mu), col.terms))
    lattice = linalg.Z2Lattice(gens)
    combo = lattice.contains(f.terms)
    if combo is None:
        return False, None
    grouped = {}
    for (i, mu), c in combo.items():
        grouped.setdefault(i, {})[mu] = c
    pairs = [(i, Polynomial(f.arity, terms)) for i, terms in sorted(grouped.items())]
    cert = HitCertificate(pairs)
    assert cert.reconstruct(f.arity) == f
    return True, cert


def cohit_order(d: int):
    """Size of the degree-d cokernel over one variable: 2^m(d), or infinite."""
    if d < 1:
        raise DomainError("degree must be positive")
    if d == 1:
        return INF
    return 2 ** min_hit_valuation(d)


def module_adem_filtration(f: Polynomial, max_j: int = 6) -> int:
    """Largest j with f reached by operator words of filtration order >= j.

    Level j uses columns w(mu) over words of length >= j; a word of
    length s is a product of s positive-degree operations, so this is the
    module filtration by powers of the positive-degree ideal.  Level 1
    coincides with the hit decision.
    """
    d = _check_input(f)
    value = 0
    for j in range(1, max_j + 1):
        gens = []
        for b in range(j, d):
            pool = [w for w in words_of_degree(b) if len(w) >= j]
            for mu in monomials_upto(f.arity, d - b):
                if sum(mu) != d - b:
                    continue
                for w in pool:
                    col = apply_word(w, Polynomial.monomial(mu))
                    if col.terms:
                        gens.append(((w, mu), col.terms))
        if gens and linalg.Z2Lattice(gens).contains(f.terms) is not None:
            value = j
        else:
            break
    return value


def classical_hit(f: Polynomial) -> bool:
    """Whether the mod-2 reduction of f is hit over the classical algebra.

    Columns are the squaring operations applied to monomials, reduced to
    bitmask rows; membership is plain elimination over F_2.
    """
    d = _check_input(f)
    target = frozenset(e for e, c in f.terms.items() if c.numerator % 2 == 1)
    if not target:
        return True
    coords = {}

    def mask(term_set):
        m = 0
        for e in term_set:
            if e not in coords:
                coords[e] = len(coords)
            m |= 1 << coords[e]
        return m

    cols = []
    for i in range(1, d):
        for mu in monomials_upto(f.arity, d - i):
            if sum(mu) != d - i:
                continue
            img = sq_on_f2(i, frozenset([mu]), f.arity)
            if img:
                cols.append(mask(img))
    tmask = mask(target)
    basis = {}
    for r in cols:
        while r:
            lead = r & -r
            if lead not in basis:
                basis[lead] = r
                break
            r ^= basis[lead]
    r = tmask
    while r:
        lead = r & -r
        if lead not in basis:
            return False
        r ^= basis[lead]
    return True
