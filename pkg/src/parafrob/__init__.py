"""Exact Frobenius-number generalizations, desk-scale parametric integer
linear programs, and eventual quasi-polynomial detection."""

__version__ = "0.1.0"

from .qpoly import BOTTOM, Poly, QuasiPolynomial

__all__ = ["BOTTOM", "Poly", "QuasiPolynomial", "__version__"]
