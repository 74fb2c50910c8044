from __future__ import annotations

from fractions import Fraction

import pytest

from krallpoly.algebra import UniPoly
from krallpoly.measures import Family
from krallpoly.ode import (
    apply_ode,
    check_divisibility,
    classical_limit_ratio,
    classical_ode_residual,
    display_coefficients,
    k_divisible_by_mass_points,
    k_polynomial,
    laguerre_ode_residual,
    pearson_residual,
    theta_omega_closed_form,
    theta_omega_definitional,
)

FAMILIES = [
    Family.krall_laguerre(Fraction(1, 2)),
    Family.krall_jacobi(0, Fraction(3, 2)),
    Family.koornwinder(Fraction(3, 2), Fraction(-1, 2)),
    Family.gegenbauer(0),
]


def _point(family):
    return {v: Fraction(1 + i, 3) for i, v in enumerate(family.variables)}


@pytest.mark.parametrize("family", FAMILIES)
def test_pearson_relation_holds_as_series(family):
    assert not any(pearson_residual(family, _point(family)).values())


@pytest.mark.parametrize("family", FAMILIES)
def test_theta_omega_two_constructions_agree(family):
    at = _point(family)
    for n in range(4):
        assert theta_omega_definitional(family, n, at) == theta_omega_closed_form(family, n, at)


@pytest.mark.parametrize("family", FAMILIES)
def test_ode_annihilates_p_n(family):
    for n in range(5):
        assert laguerre_ode_residual(family, n, _point(family)).ok


def test_ode_symbolic_in_t():
    fam = Family.krall_laguerre(0)
    rep = laguerre_ode_residual(fam, 3, None)
    assert rep.ok


def test_ode_rejects_a_wrong_polynomial():
    fam = Family.krall_laguerre(0)
    coeffs = display_coefficients(fam, 2, {"t": 1})
    assert apply_ode(coeffs, UniPoly([Fraction(2, 3), Fraction(-10, 3), 1])).is_zero()
    assert not apply_ode(coeffs, UniPoly([1, Fraction(-10, 3), 1])).is_zero()


@pytest.mark.parametrize("family", FAMILIES)
def test_classical_limit(family):
    for n in range(5):
        ratio, ok = classical_limit_ratio(family, n)
        assert ok, (n, ratio)
        assert classical_ode_residual(family, n).is_zero()


@pytest.mark.parametrize("family", FAMILIES)
def test_divisibility_with_observed_sign(family):
    at = _point(family)
    for n in range(5):
        rep = check_divisibility(family, n, at)
        assert rep.divisible
        assert rep.ok_negated
        ok, _ = k_divisible_by_mass_points(family, n, at)
        assert ok


def test_divisibility_sign_at_n1():
    """At n = 1 the quotient is -Theta_0, not +Theta_0: the recorded sign convention."""
    rep = check_divisibility(Family.krall_laguerre(0), 1, {"t": 1})
    assert rep.quotient == -rep.expected
    assert rep.quotient != rep.expected


@pytest.mark.parametrize("family", FAMILIES)
def test_k_polynomial_sources_agree(family):
    at = _point(family)
    for n in range(4):
        assert k_polynomial(family, n, at, "oracle") == k_polynomial(family, n, at, "closed")
