"""Exact and numerical checks of local factors, Bessel sums and L-value formulas for degree-2 Siegel forms."""

from .exact_algebra import Cyclo, SymRat, substitute, symrat_arith
from .report import VerificationReport

__version__ = "0.1.0"

__all__ = ["Cyclo", "SymRat", "VerificationReport", "substitute", "symrat_arith"]
