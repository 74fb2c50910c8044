"""Exact scalars, polynomials and rational functions."""
from __future__ import annotations

from .bipoly import BiPoly, bipoly_gcd
from .linalg import bareiss_det
from .ratfun import RatFun, T, ratfun_derivative, specialize, specialize_poly
from .scalars import Q, factorial, pochhammer, pochhammer_ext, render
from .series import (
    UnboundedAtInfinity,
    expand_at_infinity,
    expand_bivariate_at_infinity,
    limit_at_infinity,
)
from .upoly import DivisibilityFailure, UniPoly, exact_divide, from_roots, poly_derivative, upoly_gcd

__all__ = [
    "BiPoly", "DivisibilityFailure", "Q", "RatFun", "T", "UnboundedAtInfinity", "UniPoly",
    "bareiss_det", "bipoly_gcd", "exact_divide", "expand_at_infinity",
    "expand_bivariate_at_infinity", "factorial", "from_roots", "limit_at_infinity",
    "pochhammer", "pochhammer_ext", "poly_derivative", "ratfun_derivative", "render",
    "specialize", "specialize_poly",
    "upoly_gcd",
]
