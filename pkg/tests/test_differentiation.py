from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krallpoly.algebra import RatFun, UniPoly
from krallpoly.closed_forms import DegenerateParameters, closed_form_polynomials
from krallpoly.differentiation import (
    NoDifferentiationFormula,
    classical_monic,
    differentiation_polynomial,
    koornwinder_operator,
    koornwinder_uv_operator,
    koornwinder_via_differentiation,
    krall_laguerre_u,
    krall_laguerre_via_differentiation,
    monicity_defect,
    operator_consistency,
)
from krallpoly.hankel import classical_oracle, oracle
from krallpoly.measures import Family

from strategies import parameters, positive


def test_classical_examples():
    assert classical_monic("laguerre", 1, 0) == UniPoly([-1, 1])
    assert classical_monic("jacobi", 2, 0, 0) == UniPoly([Fraction(-1, 3), 0, 1])
    assert classical_monic("laguerre", 0, Fraction(1, 2)) == UniPoly([1])


@pytest.mark.parametrize("kind, family", [
    ("laguerre", Family.krall_laguerre(Fraction(1, 2))),
    ("jacobi", Family.koornwinder(Fraction(3, 2), 0)),
    ("jacobi", Family.koornwinder(Fraction(-1, 2), Fraction(-1, 2))),
])
def test_classical_polynomials_are_orthogonal_for_the_jump_free_weight(kind, family):
    o = classical_oracle(family)
    for n in range(5):
        assert classical_monic(kind, n, family.alpha, family.beta) == o.polynomial(n)


def test_laguerre_examples():
    assert krall_laguerre_via_differentiation(0, 0, 1) == UniPoly([1])
    assert krall_laguerre_via_differentiation(1, 0, 1) == UniPoly([Fraction(-1, 2), 1])
    assert krall_laguerre_via_differentiation(2, 0, 1) == UniPoly([Fraction(2, 3), Fraction(-10, 3), 1])


def test_laguerre_symbolic_in_t():
    fam = Family.krall_laguerre(Fraction(1, 2))
    for n in range(5):
        assert differentiation_polynomial(fam, n) == oracle(fam).polynomial(n)


def test_koornwinder_examples():
    assert koornwinder_via_differentiation(0, 0, 0, 1, 1) == UniPoly([1])
    assert koornwinder_via_differentiation(1, 0, 0, 1, 1) == UniPoly([0, 1])
    fam = Family.koornwinder(0, 0)
    assert koornwinder_via_differentiation(2, 0, 0, 1, 2) == oracle(fam, {"t1": 1, "t2": 2}).polynomial(2)


def test_monicity_identity_symbolic():
    for a, b in [(0, 0), (Fraction(1, 2), Fraction(3, 2)), (Fraction(-1, 2), Fraction(3, 2))]:
        for n in range(7):
            assert monicity_defect(n, a, b) == 0


def test_krall_jacobi_has_no_formula():
    with pytest.raises(NoDifferentiationFormula, match="no differentiation formula"):
        differentiation_polynomial(Family.krall_jacobi(0, 0), 2, {"t": 1})


def test_degenerate_n0():
    with pytest.raises(DegenerateParameters):
        koornwinder_operator(0, Fraction(-1, 2), Fraction(-1, 2))
    # n >= 1 still works there
    fam = Family.koornwinder(Fraction(-1, 2), Fraction(-1, 2))
    at = {"t1": 1, "t2": 3}
    assert differentiation_polynomial(fam, 2, at) == oracle(fam, at).polynomial(2)


@pytest.mark.parametrize("family", [
    Family.krall_laguerre(Fraction(3, 2)),
    Family.koornwinder(Fraction(1, 2), 0),
    Family.koornwinder(0, 0),
])
def test_operator_consistency_symbolic(family):
    for n in range(6):
        for c in operator_consistency(family, n):
            assert c.ok, (n, c.label)


def test_both_parameterizations_give_one_operator():
    for n in range(5):
        base = classical_monic("jacobi", n, Fraction(1, 2), Fraction(3, 2))
        a = koornwinder_operator(n, Fraction(1, 2), Fraction(3, 2)).apply(base)
        b = koornwinder_uv_operator(n, Fraction(1, 2), Fraction(3, 2)).apply(base)
        assert a == b


def test_laguerre_u_at_n0():
    assert krall_laguerre_u(0, 0) == 1 / RatFun.var("t")


@settings(max_examples=15)
@given(parameters, parameters, positive, positive, st.integers(0, 4))
def test_three_routes_agree(alpha, beta, t1, t2, n):
    fam = Family.koornwinder(alpha, beta)
    at = {"t1": t1, "t2": t2}
    try:
        d = differentiation_polynomial(fam, n, at)
        r = closed_form_polynomials(fam, n, at)[n]
    except DegenerateParameters:
        return
    assert d == r == oracle(fam, at).polynomial(n)


@settings(max_examples=15)
@given(parameters, positive, st.integers(0, 5))
def test_gegenbauer_diagonal(alpha, t, n):
    fam = Family.gegenbauer(alpha)
    try:
        d = differentiation_polynomial(fam, n, {"t": t})
    except DegenerateParameters:
        return
    assert d == oracle(fam, {"t": t}).polynomial(n)
