"""Valuations, norms, and the bridge to the classical mod-2 algebra.

The filtration valuation counts how deep an operator sits inside the
span of long words; 2-adic rescaling turns that into a norm.  Reducing
coefficients mod 2 lands in the classical algebra, where the familiar
nilpotency relations reappear.
"""

from fractions import Fraction

from jqforge import OpElement, parse_op, format_op
from jqforge.norms import (
    adem_valuation,
    degree_norm,
    ker_phi_membership,
    operator_norm_estimate,
)
from jqforge.opalg import format_classical, nilpotency_degree, phi_reduce

# Generators: the degree-k generator rewrites over longer words with
# valuation k - 1 once k >= 2.
for k in range(2, 7):
    rep = adem_valuation(OpElement.jq(k))
    print(f"Jq{k}: valuation {rep.value}, norm {rep.norm}  via {rep.method}")

# The valuation is subadditive but not multiplicative: Jq2.Jq2 rewrites
# as Jq2.Jq1.Jq1 - 1/4 (Jq1)^4 on one variable, landing one level deeper
# than the sum of the factor valuations.
pair = adem_valuation(OpElement.from_word((2, 2)))
print(f"Jq2.Jq2: valuation {pair.value} (factor sum would be 2)")

# Transformation norms by monomial scan: generators act with norm 1,
# the square of Jq1 contracts by 1/2.
print("norm(Jq4) =", operator_norm_estimate(OpElement.jq(4)).norm)
print("norm(Jq1.Jq1) =", operator_norm_estimate(OpElement.from_word((1, 1))).norm)

# A radius turns degree into a norm of its own.
e = parse_op("Jq2.Jq1")
print("degree norm of Jq2.Jq1 at rho = 1/2:", degree_norm(e, Fraction(1, 2)))

# Mod 2 everything collapses onto the classical algebra.
for text in ("Jq2.Jq1 + Jq1.Jq2", "Jq1.Jq1", "2*Jq3"):
    e = parse_op(text)
    reduced = phi_reduce(e)
    tag = " (kernel)" if ker_phi_membership(e) else ""
    print(f"phi({text}) = {format_classical(reduced)}{tag}")

# Classical nilpotency, recovered by normalization: Sq1 squares to zero,
# Sq2 needs the fourth power.
print("nilpotency of Sq1:", nilpotency_degree(1, 4))
print("nilpotency of Sq2:", nilpotency_degree(2, 8))
