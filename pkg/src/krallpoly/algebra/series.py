"""Expansions of rational functions at infinity in the deformation variables."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from .bipoly import BiPoly
from .ratfun import RatFun


class UnboundedAtInfinity(ValueError):
    """The function grows at infinity, so it has no expansion in 1/t."""


def _series_divide(num: List[Fraction], den: List[Fraction], order: int) -> List[Fraction]:
    # power series quotient in s, den[0] != 0
    out: List[Fraction] = []
    d0 = den[0]
    for k in range(order + 1):
        acc = num[k] if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return out


def expand_at_infinity(f: RatFun, order: int) -> List[Fraction]:
    """Coefficients ``[c0, c1, ..., c_order]`` of f(t) = sum c_k t^(-k) + O(t^(-order-1)).

    Long division in s = 1/t.  Raises :class:`UnboundedAtInfinity` when the
    numerator degree exceeds the denominator degree.
    """
    if f.is_bivariate:
        raise TypeError("use expand_bivariate_at_infinity for functions of (t1, t2)")
    num, den = f.num, f.den
    d = den.degree
    if num.degree > d:
        raise UnboundedAtInfinity(f"{f} is unbounded as t -> infinity")
    # p(t)/t^d = sum p_i s^(d-i)
    rev_num = [num.coeff(d - k) for k in range(d + 1)]
    rev_den = [den.coeff(d - k) for k in range(d + 1)]
    return _series_divide(rev_num, rev_den, order)


def limit_at_infinity(f: RatFun) -> Fraction:
    return expand_at_infinity(f, 0)[0]


def expand_bivariate_at_infinity(f: RatFun, order: int) -> Dict[Tuple[int, int], Fraction]:
    """Taylor coefficients of f in (s1, s2) = (1/t1, 1/t2) up to total degree ``order``.

    The key ``(i, j)`` holds the coefficient of t1^(-i) t2^(-j).  Requires the
    denominator to contain the monomial t1^A t2^B with A, B its partial degrees
    and the numerator to have partial degrees at most A, B, i.e. f holomorphic
    at (infinity, infinity).
    """
    if not f.is_bivariate:
        raise TypeError("expected a function of (t1, t2)")
    num, den = f.num, f.den
    A, B = den.degree_in("t1"), den.degree_in("t2")
    if num.degree_in("t1") > A or num.degree_in("t2") > B or (A, B) not in den.terms:
        raise UnboundedAtInfinity(f"{f} is not holomorphic at (infinity, infinity)")

    def reverse(p: BiPoly) -> Dict[Tuple[int, int], Fraction]:
        return {(A - i, B - j): c for (i, j), c in p.terms.items()}

    rn, rd = reverse(num), reverse(den)
    d0 = rd[(0, 0)]
    out: Dict[Tuple[int, int], Fraction] = {}
    for total in range(order + 1):
        for i in range(total + 1):
            j = total - i
            acc = rn.get((i, j), Fraction(0))
            for (k, l), c in rd.items():
                if (k, l) == (0, 0) or k > i or l > j:
                    continue
                prev = out.get((i - k, j - l))
                if prev:
                    acc -= c * prev
            out[(i, j)] = acc / d0
    return out
