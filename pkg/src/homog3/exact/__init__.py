"""Exact scalars, linear algebra and small polynomial systems."""

from .linalg import (
    AffineSpace,
    Infeasible,
    NotSymmetric,
    char_poly_multiplicities,
    det,
    diagonalize_form,
    identity,
    inertia,
    inverse,
    matmul,
    nullspace,
    rank,
    rref,
    solve_linear,
)
from .poly import Poly, poly_from_string
from .rational import RationalParseError, as_fraction, format_rational, parse_rational
from .solve import SolutionSet, solve_quadratic_small, vanishes_on

__all__ = [
    "AffineSpace",
    "Infeasible",
    "NotSymmetric",
    "Poly",
    "RationalParseError",
    "SolutionSet",
    "as_fraction",
    "char_poly_multiplicities",
    "det",
    "diagonalize_form",
    "format_rational",
    "identity",
    "inertia",
    "inverse",
    "matmul",
    "nullspace",
    "parse_rational",
    "poly_from_string",
    "rank",
    "rref",
    "solve_linear",
    "solve_quadratic_small",
    "vanishes_on",
]
