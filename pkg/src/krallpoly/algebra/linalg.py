"""Fraction-free determinants over an integral domain."""
from __future__ import annotations

from typing import Callable, List, Sequence

from .bipoly import BiPoly
from .upoly import UniPoly, exact_divide


def ring_exact_div(a, b):
    """Exact quotient in whichever ring a and b live in."""
    if isinstance(a, UniPoly):
        return exact_divide(a, b if isinstance(b, UniPoly) else UniPoly([b], a.var))
    if isinstance(a, BiPoly):
        return a.exact_div(b if isinstance(b, BiPoly) else BiPoly.constant(b))
    return a / b


def bareiss_det(matrix: Sequence[Sequence], div: Callable = ring_exact_div, one=1):
    """Determinant by Bareiss elimination; every division is exact.

    Works for Fraction entries and for polynomial entries (UniPoly, BiPoly),
    pivoting on the first nonzero entry below the diagonal.
    """
    m: List[list] = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return one
    sign = 1
    prev = one
    for k in range(n - 1):
        if not m[k][k]:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = div(m[i][j] * pivot - m[i][k] * m[k][j], prev)
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det
