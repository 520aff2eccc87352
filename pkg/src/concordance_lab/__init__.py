"""Exact computations of equivariant concordance obstructions for Turk's head knots."""
__version__ = "0.1.0"

from .exact import (
    GaussianRational,
    LaurentPolynomial,
    RationalFunction,
    lucas,
    is_perfect_square,
    parse_poly,
)
from .graphs import WeightedGraph, SymmetricRationalMatrix, Inertia
from .kernels import BACKEND
