from __future__ import annotations

from fractions import Fraction

import pytest

from krallpoly import suites as S
from krallpoly.measures import Family, Kind


def test_grid_points():
    ts = S.DEFAULT_TS
    assert S.grid_points(Family.krall_laguerre(0), ts) == [{"t": t} for t in ts]
    pts = S.grid_points(Family.koornwinder(0, 0), ts)
    assert len(pts) == 3 and all(p["t1"] != p["t2"] for p in pts)


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("KRALLPOLY_ALPHAS", "0,1/3")
    monkeypatch.setenv("KRALLPOLY_MAX_N", "2")
    caps = S.grid_caps()
    assert caps["alphas"] == (Fraction(0), Fraction(1, 3))
    assert caps["max_n"] == 2


@pytest.mark.parametrize("suite", list(S.SUITES))
def test_each_suite_passes_on_a_small_grid(suite):
    results = S.verify([suite], alphas=[Fraction(1, 2)], betas=[Fraction(3, 2)], ts=[Fraction(1, 3)], max_n=2)
    assert results
    assert S.summarize(results)["fail"] == 0, [r for r in results if r.status == "fail"][:3]


def test_degenerate_parameters_are_skipped():
    results = S.verify(["route-equality"], ["koornwinder"], alphas=[Fraction(-1, 2)],
                       betas=[Fraction(-1, 2)], ts=[Fraction(1)], max_n=2)
    statuses = {(r.n, r.status) for r in results}
    assert (0, "skip") in statuses and (2, "pass") in statuses
    assert not any(r.status == "fail" for r in results)


def test_boundary_index_is_recorded_not_asserted():
    results = S.verify(["toda"], ["krall-laguerre"], alphas=[0], ts=[1], max_n=1)
    assert {r.status for r in results if r.n == 0 and "flow" in r.check_id} == {"recorded"}


def test_jobs_do_not_change_results():
    kw = dict(suites=["diff-formulas"], family_names=["krall-laguerre"], alphas=[0], ts=[1, 2], max_n=2)
    serial = S.verify(jobs=1, **kw)
    parallel = S.verify(jobs=2, **kw)
    assert [r.as_dict() for r in serial] == [r.as_dict() for r in parallel]


def test_explicit_point_adaptation():
    assert S.adapt_point(Family.koornwinder(0, 0), {"t": Fraction(2)}) == {"t1": 2, "t2": 2}
    assert S.adapt_point(Family.gegenbauer(0), {"t1": 2, "t2": 2}) == {"t": 2}
    with pytest.raises(ValueError):
        S.adapt_point(Family.gegenbauer(0), {"t1": 1, "t2": 2})
