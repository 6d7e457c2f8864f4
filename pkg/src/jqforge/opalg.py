"""Free non-commutative algebra of operator words with dyadic coefficients.

A word is a tuple of positive integers naming a composite of graded
operations; the empty word is the identity.  The tuple (2, 1) means the
degree-1 piece acts first and the degree-2 piece second, consistent with
how apply_word composes.  Elements are finite rational combinations of
words with the concatenation product.

The module also carries the Hopf structure (coproduct, counit, conjugation),
the mod-2 reduction onto the classical squaring algebra with admissible
normalization, an independent classical action on F_2 polynomials used as a
cross-check oracle, and the symbolic evaluation of a word on a generic power
of a single variable.
"""

from __future__ import annotations

import functools
import re
from fractions import Fraction

from .errors import DomainError, NotInZ2Error, ParseError
from .poly import Polynomial, monomials_upto, split_signed_terms
from .scalar2 import binom, format_scalar, in_z2, mod2_reduce, parse_scalar

_WORD_RE = re.compile(r"^Jq(\d+)$")


def compositions(d: int, length=None):
    """Yield compositions of d, optionally restricted to a fixed length.

    A composition is an ordered tuple of positive integers summing to d.
    d = 0 yields only the empty tuple (and only when length is 0 or None).
    """
    if d < 0:
        raise DomainError("cannot compose a negative integer")
    if d == 0:
        if length in (None, 0):
            yield ()
        return
    if length == 0:
        return

    def rec(remaining, acc):
        if remaining == 0:
            if length is None or len(acc) == length:
                yield tuple(acc)
            return
        if length is not None and len(acc) >= length:
            return
        for part in range(1, remaining + 1):
            acc.append(part)
            yield from rec(remaining - part, acc)
            acc.pop()

    yield from rec(d, [])


def word_key(w):
    """Canonical sort key: degree, then length, then descending entries."""
    return (sum(w), len(w), tuple(-x for x in w))


class OpElement:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if any(k <= 0 for k in w):
                raise DomainError(f"word entries must be positive, got {w}")
            c = Fraction(c)
            if c != 0:
                clean[w] = clean.get(w, Fraction(0)) + c
                if clean[w] == 0:
                    del clean[w]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("OpElement is immutable")

    @classmethod
    def zero(cls) -> "OpElement":
        return cls({})

    @classmethod
    def one(cls) -> "OpElement":
        return cls({(): Fraction(1)})

    @classmethod
    def jq(cls, k: int) -> "OpElement":
        if k < 0:
            raise DomainError("generator index must be nonnegative")
        return cls({(): Fraction(1)}) if k == 0 else cls({(k,): Fraction(1)})

    @classmethod
    def from_word(cls, w, coeff=1) -> "OpElement":
        return cls({tuple(w): Fraction(coeff)})

    def __add__(self, other):
        if not isinstance(other, OpElement):
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return OpElement(terms)

    def __neg__(self):
        return OpElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, OpElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, OpElement):
            terms = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    key = w1 + w2
                    terms[key] = terms.get(key, Fraction(0)) + c1 * c2
            return OpElement(terms)
        c = Fraction(other)
        return OpElement({w: c * v for w, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise DomainError("negative powers are not elements of the algebra")
        out = OpElement.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, OpElement):
            return self.terms == other.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"OpElement({format_op(self)!r})"

    def degree(self) -> int:
        """Largest word degree; -1 for the zero element."""
        if not self.terms:
            return -1
        return max(sum(w) for w in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(w) for w in self.terms}) <= 1

    def coefficient(self, w) -> Fraction:
        return self.terms.get(tuple(w), Fraction(0))


def op_mul(a: OpElement, b: OpElement) -> OpElement:
    return a * b


# -- text form --------------------------------------------------------


def format_word(w) -> str:
    if not w:
        return "Jq0"
    return ".".join(f"Jq{k}" for k in w)


def format_op(e: OpElement) -> str:
    if not e.terms:
        return "0"
    pieces = []
    for w in sorted(e.terms, key=word_key):
        c = e.terms[w]
        body = format_word(w)
        if abs(c) != 1:
            body = f"{format_scalar(abs(c))}*{body}"
        if not pieces:
            pieces.append(body if c > 0 else "-" + body)
        else:
            pieces.append((" + " if c > 0 else " - ") + body)
    return "".join(pieces)


def parse_op(text: str) -> OpElement:
    """Parse the operator grammar, e.g. '3*Jq3 - 6*Jq2.Jq1 + Jq1.Jq1.Jq1'."""
    s = text.strip()
    if not s:
        raise ParseError("empty operator expression")
    if s == "0":
        return OpElement.zero()
    total = OpElement.zero()
    for sgn, chunk in split_signed_terms(s):
        coeff = Fraction(sgn)
        word = []
        saw_word = False
        for factor in (p.strip() for p in chunk.split("*")):
            if not factor:
                raise ParseError(f"empty factor in {chunk!r}")
            if _WORD_RE.match(factor.split(".")[0].strip()):
                if saw_word:
                    raise ParseError(f"two word factors in {chunk!r}; use '.' to compose")
                saw_word = True
                for piece in factor.split("."):
                    m = _WORD_RE.match(piece.strip())
                    if not m:
                        raise ParseError(f"bad word factor {piece!r} in {text!r}")
                    k = int(m.group(1))
                    if k > 0:
                        word.append(k)
            else:
                try:
                    coeff *= parse_scalar(factor)
                except ParseError:
                    raise ParseError(f"bad factor {factor!r} in {text!r}") from None
        total = total + OpElement.from_word(tuple(word), coeff)
    return total


# -- Hopf structure ---------------------------------------------------


def coproduct(e: OpElement) -> dict:
    """Tensor expansion as a map (left word, right word) -> coefficient.

    On a generator the coproduct splits the degree across the tensor factors;
    on a word it multiplies out factor by factor, with degree-0 pieces
    disappearing into the identity.
    """
    out = {}
    for w, c in e.terms.items():
        pairs = [((), ())]
        for k in w:
            nxt = []
            for left, right in pairs:
                for i in range(k + 1):
                    j = k - i
                    nl = left + ((i,) if i else ())
                    nr = right + ((j,) if j else ())
                    nxt.append((nl, nr))
            pairs = nxt
        for key in pairs:
            out[key] = out.get(key, Fraction(0)) + c
    return {k: v for k, v in out.items() if v != 0}


def counit(e: OpElement) -> Fraction:
    return e.terms.get((), Fraction(0))


@functools.lru_cache(maxsize=None)
def _chi_recursion(k: int) -> OpElement:
    if k == 0:
        return OpElement.one()
    acc = OpElement.zero()
    for i in range(1, k + 1):
        acc = acc + OpElement.jq(i) * _chi_recursion(k - i)
    return -acc


def chi(k: int, method: str = "recursion") -> OpElement:
    """Conjugation of the degree-k generator.

    The recursion unwinds the convolution identity sum Jq^i chi(Jq^j) = 0;
    the partition method sums (-1)^length over all compositions of k.  The
    two must agree word for word.
    """
    if k < 0:
        raise DomainError("generator index must be nonnegative")
    if method == "recursion":
        return _chi_recursion(k)
    if method == "partitions":
        terms = {}
        for alpha in compositions(k):
            terms[alpha] = Fraction((-1) ** len(alpha))
        return OpElement(terms)
    raise DomainError(f"unknown method {method!r}")


# -- classical reduction ----------------------------------------------


@functools.lru_cache(maxsize=None)
def admissible_form(word: tuple) -> frozenset:
    """Rewrite a composite squaring word into admissible form over F_2.

    Admissible means each entry is at least twice its right neighbour.
    The first offending adjacent pair from the left is expanded by the
    classical quadratic relations and the results are reduced recursively,
    with symmetric difference implementing mod-2 arithmetic.
    """
    word = tuple(k for k in word if k != 0)
    for pos in range(len(word) - 1):
        a, b = word[pos], word[pos + 1]
        if a < 2 * b:
            out = frozenset()
            for j in range(a // 2 + 1):
                if binom(b - j - 1, a - 2 * j) % 2 == 1:
                    replacement = (a + b - j,) + ((j,) if j else ())
                    rewritten = word[:pos] + replacement + word[pos + 2:]
                    out = out ^ admissible_form(rewritten)
            return out
    return frozenset({word})


def classical_mul(x: frozenset, y: frozenset) -> frozenset:
    out = frozenset()
    for w1 in x:
        for w2 in y:
            out = out ^ admissible_form(w1 + w2)
    return out


def phi_reduce(e: OpElement) -> frozenset:
    """Mod-2 reduction onto admissible classical words.

    Coefficients must be 2-adic integers; odd ones survive, even ones die.
    """
    out = frozenset()
    for w, c in e.terms.items():
        if not in_z2(c):
            raise NotInZ2Error(f"coefficient {c} of {format_word(w)} is not 2-adically integral")
        if mod2_reduce(c) == 1:
            out = out ^ admissible_form(w)
    return out


def format_classical(x: frozenset) -> str:
    if not x:
        return "0"
    words = sorted(x, key=word_key)
    return " + ".join("Sq0" if not w else ".".join(f"Sq{k}" for k in w) for w in words)


def sq_on_f2(k: int, terms: frozenset, arity: int) -> frozenset:
    """Classical degree-k square on an F_2 polynomial given as a monomial set.

    Implements the Cartan distribution across variables with mod-2 binomial
    coefficients via the digit-subset test.  Written directly from the
    classical rules so it can serve as an independent oracle for the
    reduction homomorphism.
    """
    if k < 0:
        raise DomainError("operation degree must be nonnegative")
    out = set()
    for exps in terms:
        stack = [(0, k, exps)]
        while stack:
            pos, remaining, acc = stack.pop()
            if pos == arity:
                if remaining == 0:
                    key = tuple(acc)
                    if key in out:
                        out.remove(key)
                    else:
                        out.add(key)
                continue
            e = acc[pos]
            for j in range(min(e, remaining) + 1):
                # C(e, j) is odd exactly when the binary digits of j and e-j do not collide
                if (j & (e - j)) == 0:
                    raised = tuple(acc[:pos]) + (e + j,) + tuple(acc[pos + 1:])
                    stack.append((pos + 1, remaining - j, raised))
    return frozenset(out)


def sq_word_on_f2(word, terms: frozenset, arity: int) -> frozenset:
    out = terms
    for k in reversed(tuple(word)):
        out = sq_on_f2(k, out, arity)
    return out


# -- symbolic evaluation ----------------------------------------------


def _poly_m_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _binom_m_poly(shift: int, k: int):
    """C(m + shift, k) as a polynomial in m, coefficient list by power."""
    import math

    acc = [Fraction(1)]
    for i in range(k):
        acc = _poly_m_mul(acc, [Fraction(shift - i), Fraction(1)])
    return [c / math.factorial(k) for c in acc]


def evaluate_on_power(w) -> list:
    """Coefficient of the image of a generic power, as a polynomial in m.

    Applying the word to the m-th power of a single variable lands in the
    power of degree m + deg(w); the scalar in front is the product of
    binomial factors picked up right to left, returned as a coefficient
    list indexed by powers of m.
    """
    acc = [Fraction(1)]
    shift = 0
    for k in reversed(tuple(w)):
        acc = _poly_m_mul(acc, _binom_m_poly(shift, k))
        shift += k
    return acc


def sym_eval(p, m) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * m + c
    return acc


def element_on_power(e: OpElement) -> list:
    """Symbolic single-variable coefficient of a homogeneous element."""
    if not e.is_homogeneous():
        raise DomainError("symbolic evaluation needs a homogeneous element")
    acc = [Fraction(0)]
    for w, c in e.terms.items():
        p = [c * x for x in evaluate_on_power(w)]
        if len(p) > len(acc):
            acc, p = p, acc
        for i, x in enumerate(p):
            acc[i] += x
    while len(acc) > 1 and acc[-1] == 0:
        acc.pop()
    return acc


# -- evaluation semantics ---------------------------------------------


def eval_element(e: OpElement, f: Polynomial) -> Polynomial:
    from .action import apply_word

    out = Polynomial.zero(f.arity)
    for w, c in e.terms.items():
        out = out + c * apply_word(w, f)
    return out


def equal_by_evaluation(a: OpElement, b: OpElement, n_vars=None, deg_bound=None) -> bool:
    """Decide equality by acting on all monomials within the stated bounds.

    Defaults: n_vars = max(degree, 2) and deg_bound = 2*degree + 4, where
    degree is the largest word degree of the difference.  Callers doing
    heavy sweeps pass tighter bounds and record them.
    """
    from .action import apply_word

    diff = a - b
    if not diff.terms:
        return True
    d = diff.degree()
    if n_vars is None:
        n_vars = max(d, 2)
    if deg_bound is None:
        deg_bound = 2 * d + 4
    for exps in monomials_upto(n_vars, deg_bound):
        mono = Polynomial.monomial(exps)
        image = Polynomial.zero(n_vars)
        for w, c in diff.terms.items():
            image = image + c * apply_word(w, mono)
        if image:
            return False
    return True


def nilpotency_degree(k: int, max_pow: int):
    """Smallest power of the degree-k generator that reduces to zero mod 2.

    Returns None when no power up to max_pow vanishes.
    """
    if k <= 0 or max_pow <= 0:
        raise DomainError("need k >= 1 and maxPow >= 1")
    for n in range(1, max_pow + 1):
        if not admissible_form((k,) * n):
            return n
    return None
