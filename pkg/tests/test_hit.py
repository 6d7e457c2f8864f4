import random
from fractions import Fraction

import pytest

from jqforge.action import apply_jq
from jqforge.errors import DomainError
from jqforge.hit import (
    HitCertificate,
    classical_hit,
    cohit_order,
    decision_json,
    hit_decide_graded,
    min_hit_valuation,
    module_adem_filtration,
)
from jqforge.poly import Polynomial, monomials_upto, parse_poly
from jqforge.scalar2 import INF, v2


F = Fraction


def power(d, a=1):
    return Polynomial(1, {(d,): F(a)})


def test_min_hit_valuation_small_degrees():
    assert min_hit_valuation(1) == INF
    assert min_hit_valuation(2) == 0
    assert min_hit_valuation(3) == 1
    assert min_hit_valuation(4) == 0
    assert min_hit_valuation(5) == 0
    assert min_hit_valuation(7) == 1
    assert min_hit_valuation(15) == 1


def test_min_hit_valuation_positive_exactly_below_powers_of_two():
    for d in range(2, 64):
        expected = (d + 1) & d == 0
        assert (min_hit_valuation(d) > 0) == expected, d


def test_square_is_hit_with_unit_cofactor():
    ok, cert = hit_decide_graded(power(2))
    assert ok
    assert cert.pairs == [(1, power(1))]


def test_cube_needs_one_factor_of_two():
    ok, cert = hit_decide_graded(power(3))
    assert not ok and cert is None
    ok, cert = hit_decide_graded(power(3, 2))
    assert ok
    assert cert.pairs == [(1, power(2))]


def test_degree_seven_certificates():
    ok, cert = hit_decide_graded(power(7, 4))
    assert ok and cert.pairs == [(3, power(4))]
    assert not hit_decide_graded(power(7))[0]
    assert not hit_decide_graded(power(7, 3))[0]
    ok, cert = hit_decide_graded(power(7, 2))
    assert ok
    assert cert.pairs == [(1, Polynomial(1, {(6,): F(1, 3)}))]


def test_power_of_two_family_certificates():
    # 2^n in degree 2^(n+1)-1 lands on the cofactor x1^(2^n)
    for n in range(1, 6):
        d = 2 ** (n + 1) - 1
        ok, cert = hit_decide_graded(power(d, 2 ** n))
        assert ok
        assert cert.pairs == [(2 ** n - 1, power(2 ** n))]


def test_decision_json_is_stable():
    assert decision_json(False) == '{"hit":false}'
    ok, cert = hit_decide_graded(power(7, 4))
    assert decision_json(ok, cert) == '{"hit":true,"witness":[{"cofactor":"x1^4","k":3}]}'


def test_decision_matches_valuation_oracle():
    for d in range(2, 21):
        m = min_hit_valuation(d)
        for a in (1, 2, 3, 4, 2 ** m):
            f = power(d, a)
            ok, cert = hit_decide_graded(f)
            assert ok == (v2(F(a)) >= m), (a, d)
            if ok:
                assert cert.reconstruct(1) == f


def test_certificates_reconstruct_on_composite_inputs():
    rng = random.Random(11)
    for _ in range(12):
        d = rng.randint(3, 6)
        f = Polynomial.zero(2)
        for i in (1, 2):
            terms = {}
            for mu in monomials_upto(2, d - i):
                if sum(mu) == d - i and rng.random() < 0.6:
                    terms[mu] = F(rng.randint(-3, 3))
            f = f + apply_jq(i, Polynomial(2, terms))
        if not f.terms:
            continue
        ok, cert = hit_decide_graded(f)
        assert ok
        assert cert.reconstruct(2) == f


def test_mixed_monomial_is_not_hit():
    assert not hit_decide_graded(parse_poly("x1*x2", 2))[0]
    assert not hit_decide_graded(parse_poly("2*x1*x2", 2))[0]
    ok, cert = hit_decide_graded(parse_poly("x1^2", 2))
    assert ok and cert.pairs == [(1, parse_poly("x1", 2))]


def test_degree_one_is_never_hit():
    assert not hit_decide_graded(power(1))[0]
    assert not hit_decide_graded(power(1, 8))[0]


def test_precision_cap_changes_certificate_shape():
    ok, cert = hit_decide_graded(power(4))
    assert ok and cert.pairs == [(2, power(2))]
    ok, cert = hit_decide_graded(power(4), precision_j=1)
    assert ok
    assert cert.pairs == [(1, Polynomial(1, {(3,): F(1, 3)}))]
    with pytest.raises(DomainError):
        hit_decide_graded(power(4), precision_j=0)


def test_cohit_orders():
    assert cohit_order(1) == INF
    assert cohit_order(2) == 1
    assert cohit_order(3) == 2
    assert cohit_order(4) == 1
    assert cohit_order(7) == 2
    assert cohit_order(15) == 2


def test_module_filtration_values():
    assert module_adem_filtration(power(3)) == 0
    assert module_adem_filtration(power(4)) == 2
    assert module_adem_filtration(power(8)) == 3


def test_filtration_positive_iff_hit():
    for f in (power(3), power(3, 2), power(4), parse_poly("x1*x2", 2), parse_poly("x1^2", 2)):
        assert (module_adem_filtration(f, max_j=2) >= 1) == hit_decide_graded(f)[0]


def test_classical_consistency_one_variable():
    # a classically hit reduction forces 2f to be hit, checked in one variable
    rng = random.Random(23)
    for _ in range(40):
        d = rng.randint(2, 8)
        a = rng.randint(1, 12)
        f = power(d, a)
        if classical_hit(f):
            assert hit_decide_graded(power(d, 2 * a))[0], (a, d)


def test_classical_consistency_fails_with_more_variables():
    # x1^2 reduces to a classically hit class, yet doubling the full
    # polynomial leaves 4*x1*x2 stranded outside the image
    f = parse_poly("x1^2 + 2*x1*x2", 2)
    assert classical_hit(f)
    doubled = parse_poly("2*x1^2 + 4*x1*x2", 2)
    assert not hit_decide_graded(doubled)[0]


def test_input_validation():
    with pytest.raises(DomainError):
        hit_decide_graded(Polynomial.zero(1))
    with pytest.raises(DomainError):
        hit_decide_graded(parse_poly("x1 + x1^2", 1))
    with pytest.raises(DomainError):
        hit_decide_graded(Polynomial.constant(3, 1))
    with pytest.raises(DomainError):
        hit_decide_graded(Polynomial(1, {(3,): F(1, 2)}))
    with pytest.raises(DomainError):
        min_hit_valuation(0)
    with pytest.raises(DomainError):
        cohit_order(0)


def test_certificate_reconstruct_type():
    cert = HitCertificate([(2, power(2, 3))])
    assert cert.reconstruct(1) == apply_jq(2, power(2, 3))
    assert cert.witness_json() == [{"k": 2, "cofactor": "3*x1^2"}]
