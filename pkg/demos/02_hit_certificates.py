"""Hit decisions with exact witnesses.

A polynomial is hit when it is a sum of generator images with dyadically
integral cofactors.  The decision procedure returns a certificate that
reconstructs the input exactly; this script walks the single-variable
landscape where everything is controlled by one binomial valuation.
"""

from fractions import Fraction

from jqforge import Polynomial, format_poly
from jqforge.hit import (
    cohit_order,
    hit_decide_graded,
    min_hit_valuation,
    module_adem_filtration,
)
from jqforge.scalar2 import INF


def power(d, a=1):
    return Polynomial(1, {(d,): Fraction(a)})


def show(f):
    is_hit, cert = hit_decide_graded(f)
    if is_hit:
        pairs = ", ".join(f"(Jq{k}, {format_poly(c)})" for k, c in cert.pairs)
        print(f"{format_poly(f)}: hit via {pairs}")
        assert cert.reconstruct(1) == f
    else:
        print(f"{format_poly(f)}: not hit")


for f in (power(2), power(3), power(3, 2), power(7), power(7, 2), power(7, 4)):
    show(f)

# min_hit_valuation(d) is the least 2-adic valuation a coefficient needs
# before a*x^d becomes hit.  It is positive exactly when d + 1 is a
# power of two; everywhere else some odd multiple of x^d is already hit.
print("\nd, required valuation, cohit order:")
for d in (2, 3, 6, 7, 15, 20):
    m = min_hit_valuation(d)
    order = cohit_order(d)
    print(f"  {d:2d}  {m}  {'infinite' if order == INF else order}")

# The filtration refines the yes/no answer: level j asks for cofactors
# coming from words of length at least j.
for d in (3, 4, 8):
    print(f"filtration level of x^{d}: {module_adem_filtration(power(d))}")
