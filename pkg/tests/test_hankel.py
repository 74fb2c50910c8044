from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krallpoly.algebra import RatFun, UniPoly, specialize
from krallpoly.hankel import (
    HankelOracle,
    SingularMomentMatrix,
    check_sum_formulas,
    oracle,
    verify_orthogonality,
)
from krallpoly.measures import Family, moments

from strategies import parameters, positive

KL0 = Family.krall_laguerre(0)


def test_laguerre_worked_chain():
    o = oracle(KL0, {"t": 1})
    assert o.moments(4) == [2, 1, 2, 6]
    assert o.h(0) == 2
    assert o.h(1) == Fraction(3, 2)
    assert o.b(0) == Fraction(1, 2)
    assert o.a(1) == Fraction(3, 4)
    assert o.b(1) == Fraction(17, 6)
    assert o.polynomial(1) == UniPoly([Fraction(-1, 2), 1])
    assert o.polynomial(2) == UniPoly([Fraction(2, 3), Fraction(-10, 3), 1])


def test_symbolic_oracle_matches_specialized():
    sym = oracle(KL0)
    t = RatFun.var("t")
    assert sym.moments(1)[0] == 1 + 1 / t
    for n in range(4):
        p_sym = sym.polynomial(n)
        p_pt = oracle(KL0, {"t": Fraction(5, 2)}).polynomial(n)
        assert UniPoly([specialize(c, {"t": Fraction(5, 2)}) for c in p_sym.coeffs]) == p_pt


def test_koornwinder_line_oracle_is_univariate():
    fam = Family.koornwinder(Fraction(1, 2), 0)
    o = oracle(fam, {"t2": 2})
    a1 = o.a(1)
    assert isinstance(a1, RatFun) and a1.vars == ("t1",)
    assert specialize(a1, {"t1": 3}) == oracle(fam, {"t1": 3, "t2": 2}).a(1)


@pytest.mark.parametrize("family", [
    Family.krall_laguerre(Fraction(1, 2)),
    Family.krall_jacobi(Fraction(3, 2), 0),
    Family.koornwinder(0, Fraction(-1, 2)),
    Family.gegenbauer(Fraction(1, 2)),
])
def test_orthogonality_and_sum_formulas(family):
    at = {v: Fraction(7, 2) for v in family.variables}
    assert verify_orthogonality(family, 6, at).ok
    oracle(family, at).recurrence(6)


def test_sum_formula_check_detects_corruption():
    recs = oracle(KL0, {"t": 1}).recurrence(3)
    bad = list(recs)
    bad[2] = type(recs[2])(2, recs[2].a, recs[2].b, recs[2].h, recs[2].c + 1, recs[2].d, recs[2].e)
    with pytest.raises(AssertionError):
        check_sum_formulas(bad)


def test_perturbed_moment_changes_the_measure():
    fam = KL0.perturbed(2, Fraction(1, 7))
    assert moments(fam, 3, {"t": 1})[2] == 2 + Fraction(1, 7)
    assert oracle(fam, {"t": 1}).polynomial(2) != oracle(KL0, {"t": 1}).polynomial(2)


def test_singular_moment_matrix():
    fam = KL0.perturbed(0, -2)  # mu_0 = 0 at t = 1
    with pytest.raises(SingularMomentMatrix):
        HankelOracle(fam, {"t": 1}).polynomial(1)


@given(parameters, positive, st.integers(1, 4))
def test_three_term_recurrence_reproduces_oracle(alpha, t, n):
    fam = Family.krall_laguerre(alpha)
    o = oracle(fam, {"t": t})
    x = UniPoly([0, 1])
    assert o.polynomial(n + 1) == (x - o.b(n)) * o.polynomial(n) - o.polynomial(n - 1) * o.a(n)


@settings(max_examples=15)
@given(parameters, parameters, positive, positive, st.integers(1, 3))
def test_norms_are_positive_for_positive_weights(alpha, beta, t1, t2, n):
    o = oracle(Family.koornwinder(alpha, beta), {"t1": t1, "t2": t2})
    assert o.h(n) > 0 and o.a(n) > 0
