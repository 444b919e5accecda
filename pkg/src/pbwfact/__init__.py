"""Exact verification of PBW bases, their dual families and factorizations of the diagonal series.

Modules: ``core`` (sparse polynomials, shuffle, coproduct), ``lyndon``,
``pbw``, ``factorization`` (free case), ``stuffle``, ``trace`` (partially
commutative monoids), ``enveloping`` (U(g) from structure constants) and
``cli``.
"""
from .core import Alphabet, MultiIndex, Poly, TensorPoly
from .report import Report

__all__ = ["Alphabet", "MultiIndex", "Poly", "TensorPoly", "Report"]
__version__ = "0.1.0"
