from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from krallpoly.measures import Family
from krallpoly.toda import (
    JacobiSequence,
    WindowError,
    all_fields,
    closed_form_sequence,
    combine,
    toda_residual,
    derivative_routes,
    master_symmetries,
    toda_fields,
)

from strategies import rationals

FAMILIES = [
    Family.krall_laguerre(Fraction(3, 2)),
    Family.krall_jacobi(Fraction(1, 2), Fraction(-1, 2)),
    Family.koornwinder(0, Fraction(1, 2)),
    Family.gegenbauer(Fraction(1, 2)),
]


def test_window_padding_and_bounds():
    seq = JacobiSequence((Fraction(0), Fraction(2)), (Fraction(1), Fraction(3)))
    assert seq.an(0) == 0 and seq.bn(-1) == 0
    assert seq.prefix_b(2) == 4
    with pytest.raises(WindowError):
        seq.an(2)
    with pytest.raises(ValueError):
        JacobiSequence((Fraction(1),), (Fraction(0),))


def test_constant_sequence_fields():
    # a_n = 1 (n >= 1), b_n = 0: the Toda flows are stationary away from the boundary
    seq = JacobiSequence((Fraction(0),) + (Fraction(1),) * 4, (Fraction(0),) * 5)
    assert toda_fields(seq, 2) == {"T1": (0, 0), "T2": (0, 0)}
    assert master_symmetries(seq, 2)["V-1"] == (0, 1)


@given(st.lists(rationals, min_size=4, max_size=4), st.lists(rationals, min_size=4, max_size=4), rationals)
def test_fields_are_linear_in_weights(a, b, c):
    seq = JacobiSequence((Fraction(0),) + tuple(a[1:]), tuple(b))
    fields = all_fields(seq, 1)
    one = combine(fields, {"T1": 1, "V0": 1})
    scaled = combine(fields, {"T1": c, "V0": c})
    assert scaled == (one[0] * c, one[1] * c)


@pytest.mark.parametrize("family", FAMILIES)
def test_corollaries_at_points(family):
    at = {v: Fraction(7, 2) if i == 0 else Fraction(1, 3) for i, v in enumerate(family.variables)}
    for n in range(1, 6):
        for check in toda_residual(family, n, at):
            assert check.ok, (n, check.label, check.component)


@pytest.mark.parametrize("family", FAMILIES[:2] + FAMILIES[3:])
def test_corollaries_symbolic(family):
    for n in range(1, 4):
        assert all(c.ok for c in toda_residual(family, n))


def test_boundary_index_is_computable():
    # n = 0 is reported, not asserted; it must at least evaluate
    checks = toda_residual(FAMILIES[0], 0, {"t": 1})
    assert len(checks) == 2


def test_toda_residual_fails_for_a_wrong_sequence():
    fam = FAMILIES[0]
    seq = closed_form_sequence(fam, 3, {"t": 1})
    bad = JacobiSequence(seq.a, seq.b[:2] + (seq.b[2] + 1,) + seq.b[3:])
    assert combine(all_fields(bad, 2), {"T1": 1, "V0": -1}) != combine(all_fields(seq, 2), {"T1": 1, "V0": -1})


@pytest.mark.parametrize("family", FAMILIES)
def test_derivative_routes(family):
    at = {v: Fraction(5, 2) for v in family.variables}
    for n in range(0, 4):
        for label, closed, ground in derivative_routes(family, n, at):
            assert closed == ground, label
