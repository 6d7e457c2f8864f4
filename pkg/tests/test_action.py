import random
from fractions import Fraction

import pytest

from jqforge import action
from jqforge.errors import DomainError, UndefinedError
from jqforge.poly import Polynomial, parse_poly


def rand_poly(rng, arity, deg, nterms=3):
    terms = {}
    for _ in range(nterms):
        exps = [0] * arity
        for _ in range(rng.randint(0, deg)):
            exps[rng.randrange(arity)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-6, 6), rng.choice([1, 1, 3, 5]))
    return Polynomial(arity, terms)


def test_single_variable_binomial_rule():
    # the degree-k piece scales a pure power by a binomial coefficient
    for d in range(0, 8):
        f = parse_poly(f"x1^{d}", 1) if d else Polynomial.constant(1, 1)
        for k in range(0, 8):
            img = action.apply_jq(k, f)
            from jqforge.scalar2 import binom
            expected = Polynomial(1, {(d + k,): binom(d, k)})
            assert img == expected


def test_apply_jq_known_values():
    assert action.apply_jq(1, parse_poly("x1^3", 1)) == parse_poly("3*x1^4", 1)
    assert action.apply_jq(2, parse_poly("x1^2", 1)) == parse_poly("x1^4", 1)
    assert action.apply_jq(3, parse_poly("x1^2", 1)) == Polynomial.zero(1)
    # scalars are killed by every positive piece
    assert action.apply_jq(1, Polynomial.constant(5, 2)) == Polynomial.zero(2)


def test_total_on_variable_and_homomorphism():
    x = parse_poly("x1", 1)
    assert action.apply_total(x) == parse_poly("x1 + x1^2", 1)
    rng = random.Random(5)
    for _ in range(15):
        f = rand_poly(rng, 2, 4)
        g = rand_poly(rng, 2, 4)
        assert action.apply_total(f * g) == action.apply_total(f) * action.apply_total(g)
        assert action.apply_total(f + g) == action.apply_total(f) + action.apply_total(g)


def test_cartan_formula_sweep():
    rng = random.Random(17)
    for trial in range(500):
        k = rng.randint(0, 6)
        arity = rng.randint(1, 3)
        f = rand_poly(rng, arity, 4, nterms=2)
        g = rand_poly(rng, arity, 4, nterms=2)
        lhs = action.apply_jq(k, f * g)
        rhs = Polynomial.zero(arity)
        for i in range(k + 1):
            rhs = rhs + action.apply_jq(i, f) * action.apply_jq(k - i, g)
        assert lhs == rhs, f"Cartan failed at trial {trial}, k={k}"


def test_linearity_and_graded_parts():
    rng = random.Random(23)
    for _ in range(20):
        f = rand_poly(rng, 2, 5)
        g = rand_poly(rng, 2, 5)
        c = Fraction(rng.randint(-5, 5), rng.choice([1, 3]))
        k = rng.randint(1, 4)
        assert action.apply_jq(k, f + g) == action.apply_jq(k, f) + action.apply_jq(k, g)
        assert action.apply_jq(k, c * f) == c * action.apply_jq(k, f)
        # termwise on graded parts: the pieces of the image come from the pieces of f
        img = action.apply_jq(k, f)
        rebuilt = Polynomial.zero(2)
        for _, part in f.graded_parts():
            rebuilt = rebuilt + action.apply_jq(k, part)
        assert img == rebuilt


def test_variable_preservation():
    f = parse_poly("x1*x2", 2)
    for k in range(1, 4):
        img = action.apply_jq(k, f)
        for exps in img.terms:
            assert all(e > 0 for e in exps)


def test_norm_contraction():
    rng = random.Random(29)
    for _ in range(40):
        f = rand_poly(rng, 2, 5)
        k = rng.randint(0, 5)
        assert action.apply_jq(k, f).gauss_norm() <= f.gauss_norm()


def test_apply_word_rightmost_first():
    # word (2, 1) means the degree-1 piece acts first
    f = parse_poly("x1^2", 1)
    assert action.apply_word((2, 1), f) == parse_poly("6*x1^5", 1)
    assert action.apply_word((1, 2), f) == parse_poly("4*x1^5", 1)
    assert action.apply_word((), f) == f
    assert action.apply_word((1, 1, 1), f) == parse_poly("24*x1^5", 1)
    assert action.apply_word((3,), f) == Polynomial.zero(1)


def test_psi_q_specialization_and_multiplicativity():
    f = parse_poly("x1^2", 1)
    assert action.apply_psi_q(Fraction(1), f) == action.apply_total(f)
    assert action.apply_psi_q(0, f) == f
    q = Fraction(2)
    assert action.apply_psi_q(q, f) == parse_poly("x1^2 + 4*x1^3 + 4*x1^4", 1)
    rng = random.Random(31)
    for _ in range(20):
        a = rand_poly(rng, 2, 3)
        b = rand_poly(rng, 2, 3)
        q = Fraction(rng.randint(-3, 3), rng.choice([1, 3]))
        assert action.apply_psi_q(q, a * b) == action.apply_psi_q(q, a) * action.apply_psi_q(q, b)


def test_inverse_monomial_closed_form():
    assert action.jq_on_inverse_monomial(0) == (1, -1)
    assert action.jq_on_inverse_monomial(1) == (-1, 0)
    assert action.jq_on_inverse_monomial(3) == (-1, 2)
    assert action.jq_on_inverse_monomial(4) == (1, 3)


def test_apply_jq_neg_round_trip():
    # whenever defined, applying the piece to the scaled preimage returns the power
    for m in range(2, 12):
        for k in range(1, m):
            try:
                c = action.apply_jq_neg(k, m)
            except UndefinedError:
                from jqforge.scalar2 import binom
                assert binom(m - k, k) == 0
                continue
            back = action.apply_jq(k, Polynomial(1, {(m - k,): c}))
            assert back == Polynomial(1, {(m,): 1})
    with pytest.raises(DomainError):
        action.apply_jq_neg(0, 3)


def test_apply_conj_total_inverts_total():
    rng = random.Random(37)
    for _ in range(10):
        f = rand_poly(rng, 2, 3)
        ser = action.apply_conj_total(f, 6)
        h = Polynomial(2, ser.terms)
        assert action.apply_total(h, max_deg=6) == Polynomial(
            2, {e: c for e, c in f.terms.items() if sum(e) <= 6}
        )


def test_apply_conj_total_on_variable():
    ser = action.apply_conj_total(parse_poly("x1", 1), 3)
    assert ser.terms == {(1,): Fraction(1), (2,): Fraction(-1), (3,): Fraction(2)}
