"""Exact calculator for the dyadic lift of the Steenrod operations.

Coefficients live in Z localized at the odd primes, represented as
`fractions.Fraction` with odd denominator where the context demands it.
The generators Jq^k act on integral polynomial rings by a twisted power
rule; everything downstream (relation bases, antipodes, norms, hit
decisions, series solutions) is computed exactly, with no floating
point anywhere.

The main entry points:

- :mod:`jqforge.poly` and :mod:`jqforge.action` for polynomials and the
  generator action,
- :mod:`jqforge.opalg` for words, operator elements, antipode, and the
  mod-2 reduction,
- :mod:`jqforge.relations` for relation nullspaces, decompositions,
  common multiples, and rank counts,
- :mod:`jqforge.norms` for filtration valuations and norm estimates,
- :mod:`jqforge.hit` for hit decisions with certificates,
- :mod:`jqforge.series` for truncated series, equation solving, and
  convergence checks,
- :mod:`jqforge.cli` for the command line front end.
"""

from .errors import (
    DomainError,
    IndecomposableError,
    JqError,
    NoSolutionError,
    NotFoundError,
    NotInZ2Error,
    ParseError,
    ResolutionFailedError,
    UndefinedError,
    UnsupportedCoefficientsError,
)
from .poly import Polynomial, format_poly, parse_poly
from .action import apply_jq, apply_word
from .opalg import OpElement, chi, eval_element, format_op, parse_op, phi_reduce

__version__ = "1.0.0"

__all__ = [
    "JqError",
    "ParseError",
    "DomainError",
    "NotInZ2Error",
    "UndefinedError",
    "UnsupportedCoefficientsError",
    "IndecomposableError",
    "NotFoundError",
    "ResolutionFailedError",
    "NoSolutionError",
    "Polynomial",
    "parse_poly",
    "format_poly",
    "apply_jq",
    "apply_word",
    "OpElement",
    "parse_op",
    "format_op",
    "eval_element",
    "chi",
    "phi_reduce",
    "__version__",
]
