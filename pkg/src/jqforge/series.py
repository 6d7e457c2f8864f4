"""Truncated power series over 2-adic rationals.

Covers the completion-side tooling: re-centered series, operator
application, geometric inverses of 1 - Jq^k, a Tate-membership check on
valuation profiles, and the ODE-style solver that matches coefficients
of operator equations around a chosen center.  Solutions are verified by
an independent residual pass before being returned.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .action import apply_jq
from .errors import (
    DomainError,
    NoSolutionError,
    ParseError,
    UnsupportedCoefficientsError,
)
from . import linalg
from .opalg import OpElement, eval_element, word_key
from .poly import Polynomial
from .scalar2 import binom, format_scalar, parse_scalar, v2


class TruncatedSeries:
    """Power series kept to a fixed truncation order.

    Uncentered series store monomial terms in any arity; a centered
    series has one variable and stores coefficients of (x - center)^n.
    Terms beyond the order are dropped on construction.
    """

    __slots__ = ("arity", "order", "center", "terms")

    def __init__(self, arity: int, order: int, terms=None, center=None):
        if arity < 1:
            raise DomainError("arity must be positive")
        if order < 0:
            raise DomainError("order must be nonnegative")
        if center is not None:
            center = Fraction(center)
            if arity != 1:
                raise DomainError("centered series require one variable")
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != arity:
                raise DomainError("exponent tuple does not match arity")
            c = Fraction(c)
            if c and sum(exps) <= order:
                clean[exps] = c
        object.__setattr__(self, "arity", arity)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def from_polynomial(cls, f: Polynomial, order: int, center=None):
        if center is None:
            return cls(f.arity, order, f.terms)
        if f.arity != 1:
            raise DomainError("centered series require one variable")
        return cls(1, order, _recenter_terms(f, Fraction(center), order), center)

    def to_polynomial(self) -> Polynomial:
        """Exact polynomial expansion of the stored terms."""
        if self.center is None:
            return Polynomial(self.arity, self.terms)
        c = self.center
        out = {}
        for (n,), a in self.terms.items():
            for j in range(n + 1):
                coeff = a * binom(n, j) * (-c) ** (n - j)
                if coeff:
                    out[(j,)] = out.get((j,), Fraction(0)) + coeff
        return Polynomial(1, out)

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def _compatible(self, other):
        if self.arity != other.arity or self.center != other.center:
            raise DomainError("series mismatch in arity or center")

    def __add__(self, other):
        self._compatible(other)
        order = min(self.order, other.order)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return TruncatedSeries(self.arity, order, terms, self.center)

    def __neg__(self):
        return TruncatedSeries(
            self.arity, self.order, {e: -c for e, c in self.terms.items()}, self.center
        )

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(
                self.arity,
                self.order,
                {e: c * other for e, c in self.terms.items()},
                self.center,
            )
        self._compatible(other)
        order = min(self.order, other.order)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if sum(e) <= order:
                    terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return TruncatedSeries(self.arity, order, terms, self.center)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.order == other.order
            and self.center == other.center
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        at = "" if self.center is None else f" @ {self.center}"
        return f"TruncatedSeries(order={self.order}{at}, {len(self.terms)} terms)"

    def json_obj(self):
        obj = {
            "center": None if self.center is None else format_scalar(self.center),
            "order": self.order,
            "terms": {
                ",".join(map(str, e)): format_scalar(c)
                for e, c in sorted(self.terms.items())
            },
        }
        if self.arity != 1:
            obj["arity"] = self.arity
        return obj

    def to_json(self) -> str:
        return json.dumps(self.json_obj(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad series JSON: {exc}") from None
        try:
            raw = obj["terms"]
            order = obj["order"]
        except (KeyError, TypeError):
            raise ParseError("series JSON needs 'order' and 'terms'") from None
        center = obj.get("center")
        if center is not None:
            center = parse_scalar(center)
        terms = {}
        arity = obj.get("arity")
        for key, val in raw.items():
            exps = tuple(int(p) for p in str(key).split(","))
            if arity is None:
                arity = len(exps)
            terms[exps] = parse_scalar(val)
        return cls(arity or 1, order, terms, center)


def _recenter_terms(f: Polynomial, c: Fraction, order: int):
    """Coefficients of f in powers of (x - c), up to the given order."""
    out = {}
    for (m,), a in f.terms.items():
        for n in range(min(m, order) + 1):
            coeff = a * binom(m, n) * c ** (m - n)
            if coeff:
                key = (n,)
                out[key] = out.get(key, Fraction(0)) + coeff
    return {e: c for e, c in out.items() if c}


def series_apply_op(e: OpElement, s: TruncatedSeries) -> TruncatedSeries:
    """Apply an operator element to a series, keeping the input order.

    Centered series are expanded exactly, acted on, and re-centered; the
    top deg(e) coefficients of a centered image are then provisional,
    which is why residual checks stop short by the operator degree.
    """
    if s.center is None:
        img = eval_element(e, Polynomial(s.arity, s.terms))
        return TruncatedSeries(s.arity, s.order, img.terms)
    img = eval_element(e, s.to_polynomial())
    return TruncatedSeries(1, s.order, _recenter_terms(img, s.center, s.order), s.center)


# -- Tate membership ---------------------------------------------------


@dataclass(frozen=True)
class TateReport:
    verdict: str
    profile: list
    window: tuple

    def json_obj(self):
        return {
            "verdict": self.verdict,
            "window": list(self.window),
            "profile": [[d, "inf" if v is None else v] for d, v in self.profile],
        }


def tate_check(s: TruncatedSeries) -> TateReport:
    """Truncation-relative convergence verdict from the valuation profile.

    The profile lists, per total degree with a nonzero term, the least
    coefficient valuation.  Over the last third of the degree range the
    verdict is pass when valuations never drop and strictly gain overall,
    fail when there is no gain and units keep appearing, inconclusive
    otherwise.  An empty window means the tail is identically zero, which
    a completion certainly contains.
    """
    if s.center is not None:
        raise DomainError("membership check expects an uncentered series")
    by_degree = {}
    for e, c in s.terms.items():
        d = sum(e)
        v = v2(c)
        if d not in by_degree or v < by_degree[d]:
            by_degree[d] = v
    profile = sorted(by_degree.items())
    lo = s.order - s.order // 3
    window = (lo, s.order)
    wvals = [v for d, v in profile if d >= lo]
    if not wvals:
        verdict = "pass"
    elif all(b >= a for a, b in zip(wvals, wvals[1:])) and wvals[-1] > wvals[0]:
        verdict = "pass"
    elif wvals[-1] <= wvals[0] and sum(1 for v in wvals if v == 0) >= 2:
        verdict = "fail"
    else:
        verdict = "inconclusive"
    return TateReport(verdict, profile, window)


def geometric_inverse(k: int, f: Polynomial, order: int) -> TruncatedSeries:
    """Sum of all iterates of Jq^k on f, the inverse of 1 - Jq^k.

    Verified before returning: applying 1 - Jq^k to the sum recovers f
    through degree order - k.
    """
    if k < 1:
        raise DomainError("operator index must be positive")
    if f.arity != 1:
        raise DomainError("geometric inverse expects one variable")
    if f.terms and f.degree() > order:
        raise DomainError("truncation order below the input degree")
    total = {}
    cur = f
    while cur.terms:
        for e, c in cur.terms.items():
            total[e] = total.get(e, Fraction(0)) + c
        nxt = apply_jq(k, cur)
        cur = Polynomial(1, {e: c for e, c in nxt.terms.items() if e[0] <= order})
    out = TruncatedSeries(1, order, total)
    back = Polynomial(1, out.terms)
    residual = back - apply_jq(k, back) - f
    assert all(e[0] > order - k for e in residual.terms)
    return out


# -- operator equations ------------------------------------------------


class Sode:
    """Operator equation theta(zeta) = rhs over one variable.

    Coefficients may be handed in as polynomials; the solver only covers
    the constant-coefficient case and refuses anything else.
    """

    __slots__ = ("coefficients", "rhs")

    def __init__(self, operator, rhs: Polynomial):
        if isinstance(operator, OpElement):
            table = {w: Polynomial.constant(c, 1) for w, c in operator.terms.items()}
        else:
            table = {}
            for w, p in dict(operator).items():
                w = tuple(w)
                if not isinstance(p, Polynomial):
                    p = Polynomial.constant(p, 1)
                if p.arity != 1:
                    raise DomainError("coefficients must be one-variable polynomials")
                if p.terms:
                    table[w] = p
        if not table:
            raise DomainError("operator must be nonzero")
        if rhs.arity != 1:
            raise DomainError("right-hand side must have one variable")
        object.__setattr__(
            self, "coefficients", tuple(sorted(table.items(), key=lambda t: word_key(t[0])))
        )
        object.__setattr__(self, "rhs", rhs)

    def __setattr__(self, name, value):
        raise AttributeError("Sode is immutable")

    @property
    def element(self) -> OpElement:
        acc = OpElement.zero()
        for w, p in self.coefficients:
            if p.degree() > 0:
                raise UnsupportedCoefficientsError(
                    "solver covers constant coefficients only; "
                    f"word {w} carries a degree-{p.degree()} coefficient"
                )
            acc = acc + OpElement.from_word(w, p.terms.get((0,), Fraction(0)))
        return acc

    def degree(self) -> int:
        return max(sum(w) for w, _ in self.coefficients)


def _coefficient_equations(eq: Sode, xi0, order: int):
    """Linear system rows for the centered coefficient match.

    Row m states that the image coefficient at (x - xi0)^m equals the
    matching right-hand-side coefficient; columns run over a_0..a_order.
    Rows stop at order - deg so every retained row is complete.
    """
    xi0 = Fraction(xi0)
    e = eq.element
    g = eq.degree()
    top = order - g
    cols = []
    for n in range(order + 1):
        basis = TruncatedSeries(1, order + g, {(n,): Fraction(1)}, xi0)
        img = eval_element(e, basis.to_polynomial())
        cols.append(_recenter_terms(img, xi0, order + g))
    rows = [[cols[n].get((m,), Fraction(0)) for n in range(order + 1)] for m in range(top + 1)]
    rhs_terms = _recenter_terms(eq.rhs, xi0, order + g)
    rhs = [rhs_terms.get((m,), Fraction(0)) for m in range(top + 1)]
    return rows, rhs


def sode_solve(eq: Sode, xi0, a0, order: int) -> TruncatedSeries:
    """Series solution around xi0 with prescribed constant term.

    Coefficients come from solving the matching equations; free higher
    coefficients are set to zero.  Raises NoSolutionError with the index
    of the offending equation when the system is inconsistent, or when a
    homogeneous equation admits only the zero series.
    """
    xi0 = Fraction(xi0)
    a0 = Fraction(a0)
    if order < 1:
        raise DomainError("order must be positive")
    rows, rhs = _coefficient_equations(eq, xi0, order)
    moved = [b - row[0] * a0 for row, b in zip(rows, rhs)]
    tail = [row[1:] for row in rows]
    sol, bad = linalg.solve_affine(tail, moved)
    if sol is None:
        raise NoSolutionError(bad)
    coeffs = [a0] + sol
    if not eq.rhs.terms and all(c == 0 for c in coeffs):
        raise NoSolutionError(0, "homogeneous equation admits only the zero series here")
    out = TruncatedSeries(1, order, {(n,): c for n, c in enumerate(coeffs)}, xi0)
    report = sode_residual(eq, out, order)
    assert report.ok and report.verified_through >= order - eq.degree()
    return out


@dataclass(frozen=True)
class ResidualReport:
    verified_through: int
    failure_degree: object = None
    failure_coefficient: object = None

    @property
    def ok(self) -> bool:
        return self.failure_degree is None

    def json_obj(self):
        if self.ok:
            return {"status": "verified", "through": self.verified_through}
        return {
            "status": "failed",
            "degree": self.failure_degree,
            "coefficient": format_scalar(self.failure_coefficient),
        }


def sode_residual(eq: Sode, candidate: TruncatedSeries, order: int) -> ResidualReport:
    """Apply the operator to a candidate and compare against the rhs.

    Reports the largest centered degree through which the residual
    vanishes, or the first failing degree with its coefficient.  Centered
    candidates are only trusted short of the operator degree; uncentered
    ones are exact to their order.
    """
    if candidate.arity != 1:
        raise DomainError("residual check expects one variable")
    e = eq.element
    g = eq.degree()
    trust = candidate.order if candidate.center is None else candidate.order - g
    bound = min(order, trust)
    img = series_apply_op(e, candidate)
    rhs_series = TruncatedSeries.from_polynomial(eq.rhs, bound, candidate.center)
    diff = TruncatedSeries(1, bound, img.terms, candidate.center) - rhs_series
    for m in range(bound + 1):
        c = diff.coefficient((m,))
        if c:
            return ResidualReport(m - 1, m, c)
    return ResidualReport(bound)
