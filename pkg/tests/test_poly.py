import random
from fractions import Fraction

import pytest

from jqforge.errors import DomainError, ParseError
from jqforge.poly import Polynomial, format_poly, monomials_upto, parse_poly


def rand_poly(rng, arity, deg, nterms=4):
    terms = {}
    for _ in range(nterms):
        exps = [0] * arity
        for _ in range(rng.randint(0, deg)):
            exps[rng.randrange(arity)] += 1
        terms[tuple(exps)] = Fraction(rng.randint(-9, 9), rng.choice([1, 1, 2, 3, 8]))
    return Polynomial(arity, terms)


def test_constructor_drops_zeros():
    f = Polynomial(2, {(1, 0): 1, (0, 1): 0})
    assert list(f.terms) == [(1, 0)]
    with pytest.raises(DomainError):
        Polynomial(2, {(1,): 1})
    with pytest.raises(DomainError):
        Polynomial(1, {(-1,): 1})


def test_ring_axioms_random():
    rng = random.Random(11)
    for _ in range(25):
        a = rand_poly(rng, 2, 4)
        b = rand_poly(rng, 2, 4)
        c = rand_poly(rng, 2, 4)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Polynomial.zero(2)


def test_degree_and_parts():
    f = parse_poly("x1 + x1^2", 1)
    assert f.degree() == 2
    assert f.graded_part(2) == parse_poly("x1^2", 1)
    assert f.graded_part(5) == Polynomial.zero(1)
    assert [d for d, _ in f.graded_parts()] == [1, 2]
    assert Polynomial.zero(3).degree() == -1
    assert f.is_homogeneous() is False
    assert parse_poly("3*x1*x2", 2).is_homogeneous()


def test_gauss_norm():
    assert parse_poly("24*x1^2", 1).gauss_norm() == Fraction(1, 8)
    assert parse_poly("1/3*x1", 1).gauss_norm() == 1
    assert parse_poly("x1 + 1/2*x1^2", 1).gauss_norm() == 2
    assert Polynomial.zero(1).gauss_norm() == 0


def test_gauss_norm_multiplicative():
    rng = random.Random(7)
    for _ in range(20):
        a = rand_poly(rng, 2, 3)
        b = rand_poly(rng, 2, 3)
        assert (a * b).gauss_norm() == a.gauss_norm() * b.gauss_norm()
        assert (a + b).gauss_norm() <= max(a.gauss_norm(), b.gauss_norm())


def test_parse_basic():
    f = parse_poly("3*x1^2*x2 - 1/3*x2^4", 2)
    assert f.terms == {(2, 1): Fraction(3), (0, 4): Fraction(-1, 3)}
    assert parse_poly("1", 2) == Polynomial.constant(1, 2)
    assert parse_poly("-x1", 1) == Polynomial(1, {(1,): -1})
    assert parse_poly("x1*x1", 1) == parse_poly("x1^2", 1)
    assert parse_poly("2*3*x1", 1) == parse_poly("6*x1", 1)
    assert parse_poly("0", 1) == Polynomial.zero(1)


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_poly("x3", 2)
    with pytest.raises(ParseError):
        parse_poly("x1 +", 1)
    with pytest.raises(ParseError):
        parse_poly("", 1)
    with pytest.raises(ParseError):
        parse_poly("x1^", 1)
    with pytest.raises(ParseError):
        parse_poly("y1", 1)


def test_format_parse_roundtrip():
    rng = random.Random(3)
    for _ in range(30):
        f = rand_poly(rng, 3, 5)
        assert parse_poly(format_poly(f), 3) == f
    assert format_poly(Polynomial.zero(2)) == "0"
    assert format_poly(parse_poly("x1^2 + x1", 1)) == "x1 + x1^2"


def test_format_graded_order():
    f = parse_poly("x2^2 + x1*x2 + x1 - x1^2", 2)
    assert format_poly(f) == "x1 - x1^2 + x1*x2 + x2^2"


def test_monomials_upto():
    ms = list(monomials_upto(2, 2))
    assert set(ms) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}
    assert len(list(monomials_upto(3, 4))) == 35
