"""Valuations and norm estimates for operator elements.

Three inequivalent gauges, each with its own report: the word-length
valuation (membership in powers of the positive-degree ideal, solved
degree by degree over the symbolic single-variable system), the kernel
filtration of the mod-2 reduction, and a monomial-scan estimate of the
transformation norm.  Reports carry the bounds they were computed under
and, when available, a witness that re-verifies the value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError
from . import linalg
from .opalg import (
    OpElement,
    admissible_form,
    element_on_power,
    format_op,
    phi_reduce,
    evaluate_on_power,
)
from .relations import words_of_degree
from .scalar2 import INF, in_z2, v2


@dataclass
class ValuationReport:
    value: object
    method: str
    bounds: dict = field(default_factory=dict)
    witness: object = None

    @property
    def norm(self):
        """2^(-value) as an exact Fraction; 0 at infinite valuation."""
        if self.value == INF:
            return Fraction(0)
        if self.value >= 0:
            return Fraction(1, 2 ** self.value)
        return Fraction(2 ** (-self.value))

    def to_json(self) -> str:
        if self.witness is None:
            wit = None
        elif isinstance(self.witness, OpElement):
            wit = format_op(self.witness)
        else:
            wit = str(self.witness)
        payload = {
            "value": "inf" if self.value == INF else self.value,
            "norm": str(self.norm),
            "method": self.method,
            "bounds": self.bounds,
            "witness": wit,
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def _symbolic_element_vector(e: OpElement):
    return {i: c for i, c in enumerate(element_on_power(e)) if c != 0}


def _symbolic_word_vector(w):
    return {i: c for i, c in enumerate(evaluate_on_power(w)) if c != 0}


def adem_valuation(e: OpElement) -> ValuationReport:
    """Largest j with e spanned by degree-d words of length >= j.

    Solved over the exact single-variable symbolic system, descending j,
    so the value is the order of e in the filtration by powers of the
    positive-degree ideal.  The witness is the rewriting into long words.
    """
    if not e.terms:
        return ValuationReport(INF, "ademWordLength", {"mDegree": 0})
    if not e.is_homogeneous():
        raise DomainError("valuation is per graded part; split the element first")
    d = e.degree()
    if d == 0:
        return ValuationReport(0, "ademWordLength", {"mDegree": 0})
    if any(len(w) == 0 for w in e.terms):
        raise DomainError("mixed identity term; split the element first")
    target = _symbolic_element_vector(e)
    for j in range(d, 0, -1):
        pool = [w for w in words_of_degree(d) if len(w) >= j]
        ech = linalg.SparseEchelon()
        for w in pool:
            ech.insert(_symbolic_word_vector(w), w)
        combo = ech.membership(target)
        if combo is not None:
            witness = OpElement({w: c for w, c in combo.items() if c != 0})
            return ValuationReport(j, "ademWordLength", {"mDegree": d + 1}, witness)
    raise DomainError("element of positive degree outside the span of its own words")


def ker_phi_membership(e: OpElement) -> bool:
    """Whether the mod-2 reduction of e vanishes in the classical algebra."""
    return not phi_reduce(e)


def _kernel_lattice_generators(b: int):
    """Generators of the kernel of mod-2 reduction among degree-b elements.

    Doubled words always reduce to zero; on top of those, subsets of
    words whose classical images cancel give the interesting generators.
    """
    if b == 0:
        return [OpElement({(): Fraction(2)})]
    words = words_of_degree(b)
    gens = [OpElement({w: Fraction(2)}) for w in words]
    images = [admissible_form(w) for w in words]
    keys = sorted({cw for img in images for cw in img})
    index = {cw: i for i, cw in enumerate(keys)}
    masks = []
    for img in images:
        m = 0
        for cw in img:
            m |= 1 << index[cw]
        masks.append(m)
    for combo in linalg.f2_row_nullspace(masks):
        terms = {}
        i = 0
        while combo:
            if combo & 1:
                terms[words[i]] = Fraction(1)
            combo >>= 1
            i += 1
        if terms:
            gens.append(OpElement(terms))
    return gens


def _reduce_generators(gens):
    lattice = linalg.Z2Lattice((i, g.terms) for i, g in enumerate(gens))
    return [OpElement(dict(brow)) for _, brow, _ in lattice.basis]


def ker_adic_valuation(e: OpElement, max_j: int = 6, degree_bound: int = 8) -> ValuationReport:
    """Largest j <= max_j with e in the j-th power of the reduction kernel.

    Powers of the kernel are built recursively per degree from the
    homogeneous kernel generators (the scalar 2 included), with the
    generating sets reduced by 2-adic elimination at every stage.
    """
    if not e.terms:
        return ValuationReport(max_j, "kerAdicLattice", {"maxJ": max_j})
    if not e.is_homogeneous():
        raise DomainError("valuation is per graded part; split the element first")
    if not all(in_z2(c) for c in e.terms.values()):
        raise DomainError("coefficients must be 2-adic integers")
    d = e.degree()
    if d > degree_bound:
        raise DomainError(f"degree {d} beyond the configured bound {degree_bound}")
    if d == 0:
        v = min(v2(c) for c in e.terms.values())
        return ValuationReport(min(v, max_j), "kerAdicLattice", {"maxJ": max_j})

    kernel = {b: _kernel_lattice_generators(b) for b in range(0, d + 1)}
    # L[b] holds generators of the j-th kernel power in degree b
    level = {b: list(kernel[b]) for b in range(0, d + 1)}
    value = 0
    for j in range(1, max_j + 1):
        if j > 1:
            nxt = {}
            for b in range(0, d + 1):
                prods = []
                for split in range(0, b + 1):
                    for left in level[b - split]:
                        for right in kernel[split]:
                            prods.append(left * right)
                nxt[b] = _reduce_generators(prods)
            level = nxt
        lattice = linalg.Z2Lattice((i, g.terms) for i, g in enumerate(level[d]))
        if lattice.contains(e.terms) is not None:
            value = j
        else:
            break
    return ValuationReport(value, "kerAdicLattice", {"maxJ": max_j, "degreeBound": degree_bound})


def operator_norm_estimate(e: OpElement, n_vars: int = 4, deg_bound: int = 16) -> ValuationReport:
    """Monomial-scan lower bound on the transformation norm, as 2^(-v).

    v is the least coefficient valuation among the images of all scanned
    monomials (the constant monomial included, which is what detects
    elements with an identity component).  For ultrametric coefficients
    the sup over monomials equals the sup over polynomials, so the only
    gap is the finite scan range.
    """
    from .action import apply_jq
    from .poly import Polynomial, monomials_upto

    if not all(in_z2(c) for c in e.terms.values()):
        raise DomainError("coefficients must be 2-adic integers")
    best = INF
    witness = None
    bounds = {"nVars": n_vars, "degBound": deg_bound}
    for mu in monomials_upto(n_vars, deg_bound):
        f = Polynomial.monomial(mu)
        out = Polynomial.zero(n_vars)
        for w, c in e.terms.items():
            img = f
            for k in reversed(w):
                img = apply_jq(k, img)
            out = out + c * img
        for c in out.terms.values():
            v = v2(c)
            if v < best:
                best = v
                witness = mu
        if best == 0:
            break
    return ValuationReport(best, "monomialSup", bounds, witness)


def degree_norm(e: OpElement, rho: Fraction) -> Fraction:
    """rho raised to the degree of a homogeneous element."""
    rho = Fraction(rho)
    if not (0 < rho < 1):
        raise DomainError("rho must lie strictly between 0 and 1")
    if not e.terms:
        return Fraction(0)
    if not e.is_homogeneous():
        raise DomainError("degree norm needs a homogeneous element")
    return rho ** e.degree()
