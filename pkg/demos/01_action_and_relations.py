"""Tour of the generator action and the relation machinery.

Run as a script; every value is computed exactly, so the printed output
is stable.
"""

from fractions import Fraction

from jqforge import apply_jq, apply_word, parse_poly, parse_op, format_poly, format_op
from jqforge.opalg import OpElement, chi, eval_element
from jqforge.relations import adem_nullspace, t_partition_words, q12_decompose

# The degree-k generator sends x^m to binom(m, k) x^(m+k), extended to
# products by the dyadic Cartan rule.  On a cube:
f = parse_poly("x1^3", 1)
for k in (1, 2, 3):
    print(f"Jq{k}(x^3) = {format_poly(apply_jq(k, f))}")

# Words compose right to left.
g = parse_poly("x1^2 + x2", 2)
print(f"Jq2.Jq1 on x1^2 + x2: {format_poly(apply_word((2, 1), g))}")

# Operator expressions parse with the same dot syntax the CLI uses.
e = parse_op("2*Jq2.Jq1 - Jq1.Jq2 - 1/3*Jq1.Jq1.Jq1")
print(f"{format_op(e)} acts on x^2 as {format_poly(eval_element(e, parse_poly('x1^2', 1)))}")
# which is exactly what Jq3 does: the cube generator decomposes over
# the {1,2} alphabet with those coefficients.
print(f"q12 decomposition of Jq3: {format_op(q12_decompose(3))}")

# Relation vectors in a fixed degree: the nullspace of the evaluation
# pairing against all single-variable powers.
rb = adem_nullspace(3)
print(f"degree-3 words: {[format_op(OpElement.from_word(w)) for w in rb.words]}")
print(f"degree-3 relation basis: {rb.basis}")

# Richer word lists give richer relation spaces.  Degree 4 over three
# factors picks up the all-ones word.
words = t_partition_words(4, 3)
rb4 = adem_nullspace(4, words=words)
print(f"degree-4 three-factor basis: {rb4.basis}")

# The antipode: recursion and the closed partition formula agree.
print(f"chi(Jq3) = {format_op(chi(3))}")
assert chi(5, method="recursion").terms == chi(5, method="partitions").terms
print("antipode cross-check at degree 5: ok")
