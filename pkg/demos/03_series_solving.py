"""Power-series solutions of operator equations.

Operator equations that have no polynomial solutions often have clean
series solutions once a center is chosen away from the origin.  All
series here are exact truncations with Fraction coefficients.
"""

from fractions import Fraction

from jqforge import Polynomial, OpElement
from jqforge.errors import NoSolutionError
from jqforge.series import (
    Sode,
    TruncatedSeries,
    geometric_inverse,
    sode_residual,
    sode_solve,
    tate_check,
)

x = Polynomial(1, {(1,): Fraction(1)})

# Fixed points of Jq1: solve Jq1(z) = z around xi0 = 1 with a0 = 1.
equation = Sode(OpElement.jq(1) - OpElement.one(), Polynomial(1, {}))
solution = sode_solve(equation, Fraction(1), Fraction(1), 12)
print("fixed-point series:", solution.to_json())
report = sode_residual(equation, solution, 12)
print("residual:", report.json_obj())

# At the origin the same equation degenerates: Jq1 raises degree, so the
# constant term forces a contradiction.
try:
    sode_solve(equation, Fraction(0), Fraction(1), 8)
except NoSolutionError as exc:
    print("centered at 0:", exc)

# Geometric inverse of 1 - Jq1 applied to x: iterating the action gives
# factorials, a series that converges dyadically but not classically.
geo = geometric_inverse(1, x, 10)
print("(1 - Jq1)^(-1) x =", geo.to_json())

# The completion check: factorial coefficients pass (valuations grow),
# unit coefficients fail (no decay anywhere in the tail window).
import math

factorials = TruncatedSeries(
    arity=1, order=21, terms={(k + 1,): Fraction(math.factorial(k)) for k in range(21)}
)
units = TruncatedSeries(arity=1, order=20, terms={(k,): Fraction(1) for k in range(21)})
print("factorial series:", tate_check(factorials).verdict)
print("unit series:", tate_check(units).verdict)
