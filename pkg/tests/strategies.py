"""Shared hypothesis strategies: small exact rationals and polynomials."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from krallpoly.algebra import BiPoly, RatFun, UniPoly

small_ints = st.integers(min_value=-6, max_value=6)
rationals = st.builds(Fraction, small_ints, st.integers(min_value=1, max_value=5))
positive = st.builds(Fraction, st.integers(min_value=1, max_value=9), st.integers(min_value=1, max_value=4))
# alpha, beta > -1
parameters = st.builds(Fraction, st.integers(min_value=-3, max_value=8), st.just(4))


def polys(var: str = "t", max_degree: int = 3):
    return st.lists(rationals, min_size=0, max_size=max_degree + 1).map(lambda cs: UniPoly(cs, var))


def nonzero_polys(var: str = "t", max_degree: int = 3):
    return polys(var, max_degree).filter(lambda p: not p.is_zero())


def bipolys(max_degree: int = 2):
    exps = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree))
    return st.dictionaries(exps, rationals, max_size=4).map(BiPoly)


def ratfuns(var: str = "t"):
    return st.builds(RatFun, polys(var), nonzero_polys(var))


def biratfuns():
    return st.builds(RatFun, bipolys(), bipolys().filter(bool))
