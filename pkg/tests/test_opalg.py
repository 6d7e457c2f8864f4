import random
from fractions import Fraction

import pytest

from jqforge import action, opalg
from jqforge.errors import DomainError, NotInZ2Error, ParseError
from jqforge.opalg import OpElement
from jqforge.poly import Polynomial, parse_poly


def test_word_product():
    a = OpElement.jq(1)
    b = OpElement.jq(2)
    assert (a * b).terms == {(1, 2): Fraction(1)}
    assert ((a + b) * a).terms == {(1, 1): Fraction(1), (2, 1): Fraction(1)}
    assert (OpElement.jq(0) * b) == b
    assert (b * OpElement.one()) == b


def test_degree_additivity():
    rng = random.Random(2)
    for _ in range(20):
        w1 = tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 3)))
        w2 = tuple(rng.randint(1, 4) for _ in range(rng.randint(0, 3)))
        prod = OpElement.from_word(w1) * OpElement.from_word(w2)
        assert prod.degree() == sum(w1) + sum(w2)


def test_parse_format():
    e = opalg.parse_op("3*Jq3 - 6*Jq2.Jq1 + 3*Jq1.Jq2 + Jq1.Jq1.Jq1")
    assert e.terms == {
        (3,): Fraction(3),
        (2, 1): Fraction(-6),
        (1, 2): Fraction(3),
        (1, 1, 1): Fraction(1),
    }
    assert opalg.format_op(e) == "3*Jq3 - 6*Jq2.Jq1 + 3*Jq1.Jq2 + Jq1.Jq1.Jq1"
    assert opalg.parse_op("Jq0").terms == {(): Fraction(1)}
    assert opalg.parse_op("-1/3*Jq1.Jq1.Jq1").terms == {(1, 1, 1): Fraction(-1, 3)}
    assert opalg.parse_op("0") == OpElement.zero()
    assert opalg.format_op(OpElement.zero()) == "0"
    with pytest.raises(ParseError):
        opalg.parse_op("Jq1 Jq2")
    with pytest.raises(ParseError):
        opalg.parse_op("Sq1")


def test_format_parse_roundtrip_random():
    rng = random.Random(9)
    for _ in range(25):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            w = tuple(rng.randint(1, 5) for _ in range(rng.randint(0, 3)))
            terms[w] = Fraction(rng.randint(-8, 8), rng.choice([1, 1, 3]))
        e = OpElement(terms)
        assert opalg.parse_op(opalg.format_op(e)) == e


def test_coproduct_generators():
    c1 = opalg.coproduct(OpElement.jq(1))
    assert c1 == {((1,), ()): Fraction(1), ((), (1,)): Fraction(1)}
    c2 = opalg.coproduct(OpElement.jq(2))
    assert c2 == {
        ((2,), ()): Fraction(1),
        ((1,), (1,)): Fraction(1),
        ((), (2,)): Fraction(1),
    }
    assert opalg.coproduct(OpElement.one()) == {((), ()): Fraction(1)}


def test_coassociativity_and_counit():
    # both re-expansions of the double coproduct must agree on generators
    for k in range(0, 9):
        left = {}
        right = {}
        for (w1, w2), c in opalg.coproduct(OpElement.jq(k)).items():
            for (u1, u2), d in opalg.coproduct(OpElement(({w1: 1}))).items():
                key = (u1, u2, w2)
                left[key] = left.get(key, Fraction(0)) + c * d
            for (u1, u2), d in opalg.coproduct(OpElement(({w2: 1}))).items():
                key = (w1, u1, u2)
                right[key] = right.get(key, Fraction(0)) + c * d
        left = {k2: v for k2, v in left.items() if v != 0}
        right = {k2: v for k2, v in right.items() if v != 0}
        assert left == right
        # counit laws
        collapsed = {}
        for (w1, w2), c in opalg.coproduct(OpElement.jq(k)).items():
            if not w2:
                collapsed[w1] = collapsed.get(w1, Fraction(0)) + c
        assert OpElement(collapsed) == OpElement.jq(k)


def test_chi_small_values():
    assert opalg.chi(0) == OpElement.one()
    assert opalg.chi(1) == OpElement({(1,): -1})
    assert opalg.chi(2) == OpElement({(1, 1): 1, (2,): -1})
    assert opalg.chi(3) == OpElement({(3,): -1, (1, 2): 1, (2, 1): 1, (1, 1, 1): -1})


def test_chi_methods_agree():
    for k in range(0, 11):
        rec = opalg.chi(k, "recursion")
        par = opalg.chi(k, "partitions")
        assert rec == par, f"conjugation methods disagree at k={k}"
        if k >= 1:
            assert len(par.terms) == 2 ** (k - 1)


def test_antipode_axiom_formal():
    # sum of Jq^i * chi(Jq^j) over i+j=k cancels word by word
    for k in range(1, 9):
        acc = OpElement.zero()
        for i in range(0, k + 1):
            acc = acc + OpElement.jq(i) * opalg.chi(k - i)
        assert acc == OpElement.zero()
        assert opalg.equal_by_evaluation(acc, OpElement.zero(), n_vars=2, deg_bound=6)


def test_admissible_form():
    assert opalg.admissible_form((1, 1)) == frozenset()
    assert opalg.admissible_form((2, 2)) == frozenset({(3, 1)})
    assert opalg.admissible_form((1, 2)) == frozenset({(3,)})
    assert opalg.admissible_form((2, 1)) == frozenset({(2, 1)})
    assert opalg.admissible_form(()) == frozenset({()})
    assert opalg.admissible_form((0, 2, 0)) == frozenset({(2,)})


def test_phi_reduce():
    assert opalg.phi_reduce(OpElement({(1, 1): 1})) == frozenset()
    assert opalg.phi_reduce(OpElement({(2, 2): 1})) == frozenset({(3, 1)})
    assert opalg.phi_reduce(OpElement({(5,): 2})) == frozenset()
    assert opalg.phi_reduce(OpElement({(3,): Fraction(5, 3)})) == frozenset({(3,)})
    with pytest.raises(NotInZ2Error):
        opalg.phi_reduce(OpElement({(1,): Fraction(1, 2)}))


def test_phi_multiplicative():
    rng = random.Random(41)
    for _ in range(30):
        w1 = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        w2 = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        a = OpElement({w1: rng.choice([1, 3, 5])})
        b = OpElement({w2: rng.choice([1, 2, 7])})
        lhs = opalg.phi_reduce(a * b)
        rhs = opalg.classical_mul(opalg.phi_reduce(a), opalg.phi_reduce(b))
        assert lhs == rhs


def test_phi_commutes_with_classical_action():
    # reduction of the dyadic action equals the classical action on reductions
    rng = random.Random(43)
    for trial in range(200):
        k = rng.randint(0, 4)
        arity = rng.randint(1, 2)
        terms = {}
        for _ in range(3):
            exps = [0] * arity
            for _ in range(rng.randint(0, 5)):
                exps[rng.randrange(arity)] += 1
            terms[tuple(exps)] = Fraction(rng.randint(-4, 4), rng.choice([1, 3, 5]))
        f = Polynomial(arity, terms)
        img = action.apply_jq(k, f)
        lhs = frozenset(e for e, c in img.terms.items() if c.numerator % 2 == 1)
        fbar = frozenset(e for e, c in f.terms.items() if c.numerator % 2 == 1)
        rhs = opalg.sq_on_f2(k, fbar, arity)
        assert lhs == rhs, f"trial {trial}: k={k}"


def test_evaluate_on_power():
    assert opalg.evaluate_on_power(()) == [Fraction(1)]
    assert opalg.evaluate_on_power((1, 1, 1)) == [Fraction(0), Fraction(2), Fraction(3), Fraction(1)]
    # m^2(m+1)/2 = (m^3 + m^2)/2
    assert opalg.evaluate_on_power((2, 1)) == [Fraction(0), Fraction(0), Fraction(1, 2), Fraction(1, 2)]
    # reference values at m = 2
    vals = {(3,): 0, (2, 1): 6, (1, 2): 4, (1, 1, 1): 24}
    for w, expect in vals.items():
        assert opalg.sym_eval(opalg.evaluate_on_power(w), 2) == expect


def test_evaluate_on_power_matches_action():
    rng = random.Random(47)
    for _ in range(60):
        deg = rng.randint(1, 8)
        parts = []
        left = deg
        while left > 0:
            p = rng.randint(1, left)
            parts.append(p)
            left -= p
        w = tuple(parts)
        m = rng.randint(0, 12)
        sym = opalg.sym_eval(opalg.evaluate_on_power(w), m)
        img = action.apply_word(w, Polynomial(1, {(m,): 1}))
        assert img.terms.get((m + deg,), Fraction(0)) == sym


def test_eval_element_relation():
    a3 = opalg.parse_op("3*Jq3 - 6*Jq2.Jq1 + 3*Jq1.Jq2 + Jq1.Jq1.Jq1")
    assert opalg.eval_element(a3, parse_poly("x1^2", 1)) == Polynomial.zero(1)
    chi2 = opalg.chi(2)
    assert opalg.eval_element(chi2, parse_poly("x1", 1)) == parse_poly("2*x1^3", 1)
    f = parse_poly("x1^2 + 3*x1", 1)
    assert opalg.eval_element(OpElement.one(), f) == f


def test_equal_by_evaluation():
    assert not opalg.equal_by_evaluation(OpElement.jq(2), OpElement({(1, 1): 1}))
    e = opalg.parse_op("2*Jq2.Jq1 - Jq1.Jq2 - 1/3*Jq1.Jq1.Jq1")
    assert opalg.equal_by_evaluation(OpElement.jq(3), e, n_vars=3, deg_bound=10)
    assert opalg.equal_by_evaluation(e, e)


def test_nilpotency_degree():
    assert opalg.nilpotency_degree(1, 8) == 2
    assert opalg.nilpotency_degree(2, 8) == 4
    assert opalg.nilpotency_degree(2, 3) is None
    with pytest.raises(DomainError):
        opalg.nilpotency_degree(0, 4)


def test_compositions():
    assert set(opalg.compositions(3)) == {(3,), (2, 1), (1, 2), (1, 1, 1)}
    assert list(opalg.compositions(0)) == [()]
    assert set(opalg.compositions(4, length=2)) == {(3, 1), (2, 2), (1, 3)}
    for d in range(1, 9):
        assert len(list(opalg.compositions(d))) == 2 ** (d - 1)
