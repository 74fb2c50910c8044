from __future__ import annotations

from fractions import Fraction

import pytest

from krallpoly.algebra import RatFun, UniPoly
from krallpoly.isomonodromy import (
    WRONSKIAN_SIGN,
    asymptotic_check,
    display_checks,
    first_integrals,
    gegenbauer_reduction,
    infinity_block_check,
    koornwinder_derivatives,
    numerator_wronskian,
    painleve_parameters,
    painleve_residuals,
    pde_system_residuals,
    scalar_equations,
    schlesinger_residual,
    schlesinger_residuals,
)
from krallpoly.measures import Family

ONE_VAR = [
    Family.krall_laguerre(Fraction(1, 2)),
    Family.krall_jacobi(Fraction(3, 2), 0),
    Family.gegenbauer(Fraction(3, 2)),
]
KOORN = Family.koornwinder(Fraction(1, 2), Fraction(3, 2))


@pytest.mark.parametrize("family", ONE_VAR)
def test_schlesinger_symbolic_one_variable(family):
    for n in range(1, 5):
        res = schlesinger_residual(family, n)
        assert res.ok, res.first_failure()


@pytest.mark.parametrize("at", [{"t2": Fraction(7, 2)}, {"t1": Fraction(1, 3)}])
def test_schlesinger_koornwinder_on_lines(at):
    var = "t1" if "t2" in at else "t2"
    for n in range(1, 4):
        res = schlesinger_residual(KOORN, n, at, var)
        assert res.ok, res.first_failure()


def test_schlesinger_detects_corruption():
    fam = Family.krall_laguerre(0)
    res = schlesinger_residual(fam.perturbed(2, Fraction(1, 5)), 2, {"t": 1})
    assert not res.ok


@pytest.mark.parametrize("family", ONE_VAR + [KOORN])
def test_infinity_block_and_displays(family):
    at = {v: Fraction(2 + i, 3) for i, v in enumerate(family.variables)}
    for n in range(1, 4):
        for var in family.variables:
            for label, lhs, rhs in infinity_block_check(family, n, at, var):
                assert lhs == rhs, label
        for label, lhs, rhs in display_checks(family, n, at):
            assert lhs == rhs, label
        assert numerator_wronskian(family, n, at) == UniPoly([WRONSKIAN_SIGN])


@pytest.mark.parametrize("family", [ONE_VAR[0], ONE_VAR[1], KOORN])
def test_scalar_equations(family):
    at = {v: Fraction(5, 2) for v in family.variables}
    for n in range(1, 4):
        for var in family.variables:
            for label, lhs, rhs in scalar_equations(family, n, at, var):
                assert lhs == rhs, label


def test_gegenbauer_painleve_parameters():
    p = painleve_parameters(Family.gegenbauer(0), 1)
    assert (p["a"], p["b"], p["c"], p["d"]) == (Fraction(9, 8), Fraction(-1, 8), 0, 0)


@pytest.mark.parametrize("family", ONE_VAR)
def test_painleve_residuals_vanish(family):
    for n in range(0, 6):
        for rep in painleve_residuals(family, n):
            assert rep.ok, (n, rep.equation)


def test_painleve_rejects_wrong_function():
    # the Painleve III residual of a function that is not a solution is nonzero
    from krallpoly.isomonodromy import _p3_residual
    t = RatFun.var("t")
    p = painleve_parameters(Family.krall_laguerre(0), 2)
    assert _p3_residual(1 / (t + 1), **p)


def test_gegenbauer_reduction_identities():
    for n in range(0, 4):
        for label, lhs, rhs in gegenbauer_reduction(Family.gegenbauer(Fraction(1, 2)), n):
            assert lhs == rhs, label


@pytest.mark.parametrize("family, expected", [
    (Family.krall_laguerre(Fraction(3, 2)), (1, 0)),
    (Family.krall_jacobi(Fraction(1, 2), Fraction(1, 2)), None),
    (Family.gegenbauer(0), None),
])
def test_first_integrals_symbolic(family, expected):
    for n in range(0, 5):
        reps = first_integrals(family, n)
        assert all(r.ok for r in reps), [(r.name, r.value) for r in reps if not r.ok]
        if expected:
            assert tuple(r.expected for r in reps) == expected


def test_krall_jacobi_first_integral_constant():
    fam = Family.krall_jacobi(Fraction(1, 2), Fraction(1, 2))
    main = first_integrals(fam, 2)[0]
    assert main.value == 1 - Fraction(1, 4) / Fraction(9, 4)


def test_koornwinder_first_integrals_on_lines():
    for n in range(0, 4):
        for line in ({"t2": Fraction(1, 3)}, {"t1": Fraction(7, 2)}):
            reps = first_integrals(KOORN, n, line)
            assert [r.expected for r in reps] == [1, Fraction(9, 4)]
            assert all(r.ok for r in reps)


def test_koornwinder_pde_system_on_lines():
    for n in range(0, 4):
        for line in ({"t2": 2}, {"t1": Fraction(1, 3)}):
            for label, res in pde_system_residuals(KOORN, n, line):
                assert not res, label


def test_koornwinder_derivatives_refuse_points():
    with pytest.raises(ValueError):
        koornwinder_derivatives(KOORN, 1, {"t1": 1, "t2": 1})


@pytest.mark.parametrize("family", [ONE_VAR[0], ONE_VAR[1], KOORN])
def test_asymptotics(family):
    for n in range(0, 6):
        for label, got, want in asymptotic_check(family, n):
            assert got == want, (n, label)
