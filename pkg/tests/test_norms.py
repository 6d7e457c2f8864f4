import json

import pytest
from fractions import Fraction

from jqforge.errors import DomainError
from jqforge.norms import (
    ValuationReport,
    adem_valuation,
    degree_norm,
    ker_adic_valuation,
    ker_phi_membership,
    operator_norm_estimate,
)
from jqforge.opalg import OpElement, element_on_power, parse_op
from jqforge.scalar2 import INF

F = Fraction


def test_adem_valuation_generators():
    # the first generator has valuation 1 by definition (norm 1/2); from
    # degree 2 on the valuation is k - 1
    assert adem_valuation(OpElement.jq(1)).value == 1
    assert adem_valuation(OpElement.jq(1)).norm == F(1, 2)
    for k in range(2, 7):
        rep = adem_valuation(OpElement.jq(k))
        assert rep.value == k - 1
        assert rep.norm == F(1, 2 ** (k - 1))
        assert rep.method == "ademWordLength"


def test_adem_valuation_word_21():
    rep = adem_valuation(OpElement.from_word((2, 1)))
    assert rep.value == 2


def test_adem_valuation_witness_reverifies():
    rep = adem_valuation(OpElement.jq(3))
    assert rep.witness is not None
    assert all(len(w) >= 2 for w in rep.witness.terms)
    assert element_on_power(rep.witness) == element_on_power(OpElement.jq(3))


def test_adem_valuation_not_multiplicative_at_22():
    # the word (2,2) equals (2,1,1) - 1/4*(1,1,1,1) on every power of one
    # variable, so its filtration order is 3, not 1 + 1; length-based
    # multiplicativity genuinely fails here
    rep = adem_valuation(OpElement.from_word((2, 2)))
    assert rep.value == 3
    expansion = OpElement({(2, 1, 1): F(1), (1, 1, 1, 1): F(-1, 4)})
    assert element_on_power(expansion) == element_on_power(OpElement.from_word((2, 2)))


def test_adem_valuation_additive_on_short_words():
    for w in ((1, 1), (2, 1), (1, 2)):
        rep = adem_valuation(OpElement.from_word(w))
        assert rep.value == sum(adem_valuation(OpElement.jq(k)).value for k in w)


def test_adem_valuation_scalars_and_errors():
    assert adem_valuation(OpElement.one()).value == 0
    assert adem_valuation(OpElement.zero()).value == INF
    with pytest.raises(DomainError):
        adem_valuation(OpElement.jq(1) + OpElement.jq(2))


def test_ker_phi_membership():
    assert ker_phi_membership(OpElement.from_word((1, 1)))
    assert not ker_phi_membership(OpElement.jq(1))
    assert ker_phi_membership(parse_op("Jq1.Jq2 - Jq3"))
    for k in range(1, 5):
        assert not ker_phi_membership(OpElement.one() - OpElement.jq(k))


def test_ker_phi_on_degree_three_relation():
    a3 = parse_op("3*Jq3 - 6*Jq2.Jq1 + 3*Jq1.Jq2 + Jq1.Jq1.Jq1")
    assert ker_phi_membership(a3)


def test_ker_adic_scalars():
    assert ker_adic_valuation(OpElement({(): F(2)})).value == 1
    assert ker_adic_valuation(OpElement({(): F(4)})).value == 2
    assert ker_adic_valuation(OpElement({(): F(3)})).value == 0


def test_ker_adic_squares_of_jq1():
    assert ker_adic_valuation(OpElement.from_word((1, 1))).value == 1
    assert ker_adic_valuation(OpElement.from_word((1, 1, 1, 1))).value == 2


def test_ker_adic_outside_kernel():
    assert ker_adic_valuation(OpElement.jq(2)).value == 0


def test_ker_adic_coefficient_guard():
    with pytest.raises(DomainError):
        ker_adic_valuation(OpElement({(1,): F(1, 2)}))


def test_norm_estimate_generators():
    for k in range(1, 9):
        rep = operator_norm_estimate(OpElement.jq(k), n_vars=2, deg_bound=10)
        assert rep.value == 0
        assert rep.norm == 1
        assert rep.witness is not None


def test_norm_estimate_jq1_squared():
    rep = operator_norm_estimate(OpElement.from_word((1, 1)), n_vars=2, deg_bound=8)
    assert rep.value == 1
    assert rep.norm == F(1, 2)


def test_norm_estimate_jq1_fourth():
    rep = operator_norm_estimate(OpElement.from_word((1, 1, 1, 1)), n_vars=2, deg_bound=8)
    assert rep.value == 3
    assert rep.norm == F(1, 8)


def test_norm_estimate_identity_minus_generator():
    rep = operator_norm_estimate(OpElement.one() - OpElement.jq(2), n_vars=2, deg_bound=6)
    assert rep.value == 0


def test_norm_estimate_bounded_by_ker_adic():
    elems = [
        OpElement.from_word((1, 1)),
        OpElement.from_word((1, 1, 1, 1)),
        parse_op("Jq1.Jq2 - Jq3"),
        parse_op("2*Jq2"),
        parse_op("Jq1.Jq1 + 2*Jq2"),
    ]
    for e in elems:
        est = operator_norm_estimate(e, n_vars=2, deg_bound=8)
        ker = ker_adic_valuation(e)
        assert est.norm <= F(1, 2 ** ker.value)


def test_ker_phi_matches_small_norm():
    elems = [
        OpElement.jq(1),
        OpElement.jq(2),
        OpElement.from_word((1, 1)),
        parse_op("Jq1.Jq2 - Jq3"),
        parse_op("3*Jq3 - 6*Jq2.Jq1 + 3*Jq1.Jq2 + Jq1.Jq1.Jq1"),
        parse_op("Jq2.Jq2 + Jq3.Jq1"),
    ]
    for e in elems:
        est = operator_norm_estimate(e, n_vars=3, deg_bound=8)
        assert ker_phi_membership(e) == (est.norm <= F(1, 2))


def test_degree_norm_values():
    assert degree_norm(OpElement.jq(3), F(1, 2)) == F(1, 8)
    assert degree_norm(OpElement.one(), F(1, 2)) == 1
    with pytest.raises(DomainError):
        degree_norm(OpElement.jq(1) + OpElement.jq(2), F(1, 2))
    with pytest.raises(DomainError):
        degree_norm(OpElement.jq(1), F(2))


def test_degree_norm_sandwich_observed():
    # at rho = 1/2 the filtration norm of Jq^3 is 1/4 while rho^3 = 1/8:
    # the lower bound holds, the upper does not; both sides are reported,
    # neither is asserted as a law
    adem = adem_valuation(OpElement.jq(3)).norm
    rho_norm = degree_norm(OpElement.jq(3), F(1, 2))
    assert F(1, 2) * rho_norm <= adem
    assert not adem <= rho_norm


def test_report_json_round_trip():
    rep = adem_valuation(OpElement.jq(3))
    data = json.loads(rep.to_json())
    assert data["value"] == 2
    assert data["norm"] == "1/4"
    assert data["method"] == "ademWordLength"
    rep0 = ValuationReport(INF, "monomialSup", {})
    assert json.loads(rep0.to_json())["value"] == "inf"
