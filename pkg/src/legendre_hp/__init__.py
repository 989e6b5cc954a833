"""Exact-arithmetic tools for multiplier sequences in the Legendre basis."""

__version__ = "0.1.0"

from .errors import InconsistencyError
from .poly import UniPoly, BiPoly
from .legendre import legendre_poly, to_legendre_basis
from .diffop import DiffOperator, EigenSequence, apply, compose, delta, operator_from_h
from .hyperbolicity import VerdictReport, is_hyperbolic, ms_empirical_check
from .symbol import SymbolCurve, line_test, quartic_symbol, symbol_of

__all__ = [
    "__version__",
    "InconsistencyError",
    "UniPoly",
    "BiPoly",
    "legendre_poly",
    "to_legendre_basis",
    "DiffOperator",
    "EigenSequence",
    "apply",
    "compose",
    "delta",
    "operator_from_h",
    "VerdictReport",
    "is_hyperbolic",
    "ms_empirical_check",
    "SymbolCurve",
    "line_test",
    "quartic_symbol",
    "symbol_of",
]
