"""Exact pipeline from local BPS invariants to shifted Poincare polynomials.

The package computes, with zero numerical tolerance, the shifted Poincare
polynomials of moduli of one-dimensional sheaves on the plane from the
genus/degree BPS table of the local plane, via an all-genus correspondence
between local and relative invariants.  Two independent routes evaluate the
correspondence's graph sum (explicit rooted trees and a functional-equation
solve), and a battery of truncated window checks validates every closed form
the computation rests on.
"""

from .errors import (DegreeBoundError, InputError, MissingGVError,
                     MissingRefinedDataError, NegativeCoefficientError,
                     NonIntegerGVError, NonPolynomialContributionError,
                     NotDivisibleError, PipelineError, UnsupportedGcdError)
from .exactalg import (GaussRat, HalfLaurent, RatFun, TwoVarSeries,
                       geometric_series, is_palindromic, product_expand,
                       quantum_integer, sqrt_diff, two_sin)
from .gvdata import GVTable, bundled_gv_table, bundled_reduced_rows, genus_bound

__version__ = "0.1.0"

__all__ = [
    "DegreeBoundError", "InputError", "MissingGVError", "MissingRefinedDataError",
    "NegativeCoefficientError", "NonIntegerGVError", "NonPolynomialContributionError",
    "NotDivisibleError", "PipelineError", "UnsupportedGcdError",
    "GaussRat", "HalfLaurent", "RatFun", "TwoVarSeries",
    "geometric_series", "is_palindromic", "product_expand", "quantum_integer",
    "sqrt_diff", "two_sin",
    "GVTable", "bundled_gv_table", "bundled_reduced_rows", "genus_bound",
    "__version__",
]
