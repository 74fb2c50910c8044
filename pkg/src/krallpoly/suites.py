"""Verification suites over a parameter grid.

A suite maps (family, n, point) to a list of named outcomes.  Every
outcome is exact: ``pass`` means an identity held as an equality of
rationals or rational functions.  ``skip`` marks parameters where a closed
form is singular (alpha + beta + 1 = 0 at small n), and ``recorded`` marks
boundary cases that are reported but not asserted.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import UniPoly, specialize
from .closed_forms import (
    DegenerateParameters,
    closed_form_polynomials,
    recurrence_from_closed_form,
)
from .differentiation import (
    NoDifferentiationFormula,
    differentiation_polynomial,
    operator_consistency,
)
from .hankel import oracle
from .isomonodromy import (
    WRONSKIAN_SIGN,
    asymptotic_check,
    display_checks,
    first_integrals,
    infinity_block_check,
    numerator_wronskian,
    painleve_residuals,
    pde_system_residuals,
    scalar_equations,
    schlesinger_residuals,
)
from .measures import Family, Kind, moment_functional, moments
from .ode import (
    check_divisibility,
    classical_limit_ratio,
    classical_ode_residual,
    k_divisible_by_mass_points,
    k_polynomial,
    laguerre_ode_residual,
)
from .toda import derivative_routes, toda_residual

PASS, FAIL, SKIP, RECORDED = "pass", "fail", "skip", "recorded"
VALUE_WIDTH = 240

DEFAULT_ALPHAS = (Fraction(0), Fraction(1, 2), Fraction(3, 2), Fraction(-1, 2))
DEFAULT_TS = (Fraction(1, 3), Fraction(1), Fraction(7, 2))
DEFAULT_MAX_N = 5
FAMILY_NAMES = tuple(k.value for k in Kind)


def _render(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    text = str(value)
    return text if len(text) <= VALUE_WIDTH else text[:VALUE_WIDTH] + "..."


@dataclass
class Outcome:
    name: str
    status: str
    value: str = ""


def _eq(name: str, lhs, rhs) -> Outcome:
    if lhs == rhs:
        return Outcome(name, PASS, _render(lhs))
    return Outcome(name, FAIL, f"{_render(lhs)} != {_render(rhs)}")


def _zero(name: str, residual) -> Outcome:
    if not residual:
        return Outcome(name, PASS, "0")
    return Outcome(name, FAIL, _render(residual))


@dataclass
class CheckResult:
    check_id: str
    family: str
    n: int
    params: Dict[str, str]
    status: str
    value: str
    time: Optional[float] = None

    def as_dict(self, timings: bool = False) -> Dict[str, object]:
        d = asdict(self)
        if not timings:
            d.pop("time")
        return d


# -- suites -----------------------------------------------------------------------------
#
# Each takes (family, n, at) where ``at`` fixes every deformation variable,
# or is None for suites that are symbolic in the deformation.

def _recurrence_route(family: Family, n: int, at) -> UniPoly:
    return closed_form_polynomials(family, n, at)[n]


def suite_orthogonality(family: Family, n: int, at) -> List[Outcome]:
    """Closed-form p_m, p_n under the family's moment functional: <p_m, p_n> = delta_mn h_n."""
    try:
        polys = closed_form_polynomials(family, n, at)
    except DegenerateParameters:
        try:
            polys = [differentiation_polynomial(family, k, at) for k in range(n + 1)]
        except (DegenerateParameters, NoDifferentiationFormula):
            return [Outcome("orthogonality", SKIP, "closed forms singular at these parameters")]
    mu = moments(family, 2 * n + 1, at)
    h = oracle(family, at).h(n)
    bad = []
    for m in range(n + 1):
        val = moment_functional(polys[m] * polys[n], mu)
        expected = h if m == n else 0
        if val != expected:
            bad.append(f"(m={m}, n={n}): {val}")
    if bad:
        return [Outcome("orthogonality", FAIL, "; ".join(bad))]
    return [Outcome("orthogonality", PASS, f"h_{n} = {h}")]


def suite_route_equality(family: Family, n: int, at) -> List[Outcome]:
    o = oracle(family, at)
    out = []
    try:
        a, b = recurrence_from_closed_form(family, n)
        out.append(_eq("a_n closed form = oracle", specialize(a, at), o.a(n)))
        out.append(_eq("b_n closed form = oracle", specialize(b, at), o.b(n)))
        out.append(_eq("p_n recurrence = oracle", _recurrence_route(family, n, at), o.polynomial(n)))
    except DegenerateParameters:
        out.append(Outcome("closed forms", SKIP, "alpha + beta + 1 = 0"))
    return out


def suite_ode(family: Family, n: int, at) -> List[Outcome]:
    out = []
    rep = laguerre_ode_residual(family, n, at)
    out.append(_zero("display equation annihilates p_n", rep.residual_display))
    out.append(_zero("assembled equation annihilates p_n", rep.residual_lae))
    out.append(Outcome("assembled = factor * display", PASS if rep.proportional and rep.ratio_expected else FAIL,
                       _render(rep.ratio)))
    return out


def suite_ode_limit(family: Family, n: int, at) -> List[Outcome]:
    ratio, ok = classical_limit_ratio(family, n)
    return [Outcome("limit of the display is the classical equation", PASS if ok else FAIL, _render(ratio)),
            _zero("classical equation annihilates the classical p_n", classical_ode_residual(family, n))]


def suite_divisibility(family: Family, n: int, at) -> List[Outcome]:
    rep = check_divisibility(family, n, at)
    out = [Outcome("divisible by W", PASS if rep.divisible else FAIL,
                   "" if rep.divisible else _render(rep.remainder))]
    if rep.divisible:
        # the quotient is minus the sum of Theta_i (see README, sign convention)
        out.append(Outcome("quotient is -(Theta_0 + ... + Theta_{n-1})",
                           PASS if rep.negated_matches else FAIL, _render(rep.quotient)))
    ok, k = k_divisible_by_mass_points(family, n, at)
    out.append(Outcome("K_n divisible by the mass-point polynomial", PASS if ok else FAIL, _render(k)))
    if n >= 2:
        # K_0 = 0; from n = 1 on only n-independence of the degree is asserted
        first = k_polynomial(family, 1, at).degree
        out.append(Outcome("deg K_n equals deg K_1", PASS if k.degree == first else FAIL,
                           f"deg K_n = {k.degree}, deg K_1 = {first}"))
    return out


def suite_painleve(family: Family, n: int, at) -> List[Outcome]:
    out = []
    for r in painleve_residuals(family, n):
        o = _zero(r.equation, r.residual)
        if o.status == PASS and r.parameters:
            o.value = ", ".join(f"{k}={v}" for k, v in r.parameters.items())
        out.append(o)
    return out


def suite_first_integrals(family: Family, n: int, at) -> List[Outcome]:
    if family.kind is not Kind.KOORNWINDER:
        return [_eq(r.name, r.value, r.expected) if r.stationary
                else Outcome(r.name, FAIL, "not constant") for r in first_integrals(family, n)]
    out = []
    for line in _lines(at):
        for r in first_integrals(family, n, line):
            tag = f"{r.name} on {_line_label(line)}"
            out.append(_eq(tag, r.value, r.expected) if r.stationary else Outcome(tag, FAIL, "not constant"))
    return out


def suite_schlesinger(family: Family, n: int, at) -> List[Outcome]:
    if n < 1:
        return []
    out = []
    for res in schlesinger_residuals(family, n, at):
        out.append(Outcome(f"matrix residual [{res.var}]", PASS if res.ok else FAIL,
                           "0" if res.ok else _render(res.first_failure())))
        out += [_eq(f"{label} [{res.var}]", l, r)
                for label, l, r in infinity_block_check(family, n, at, res.var)]
    out.append(_eq("numerator Wronskian", numerator_wronskian(family, n, at), UniPoly([WRONSKIAN_SIGN])))
    out += [_eq(label, l, r) for label, l, r in display_checks(family, n, at)]
    if family.kind is not Kind.GEGENBAUER:
        for var in family.variables:
            out += [_eq(label, l, r) for label, l, r in scalar_equations(family, n, at, var)]
    return out


def suite_pde_system(family: Family, n: int, at) -> List[Outcome]:
    out = []
    for line in _lines(at):
        out += [_zero(f"{label} on {_line_label(line)}", res)
                for label, res in pde_system_residuals(family, n, line)]
    return out


def suite_toda(family: Family, n: int, at) -> List[Outcome]:
    out = []
    for c in toda_residual(family, n, at):
        o = _eq(f"{c.label}, {c.component}_n", c.lhs, c.rhs)
        if n == 0:
            # boundary index: the padding a_0 = 0, b_{-1} = 0 enters; reported only
            o = Outcome(o.name, RECORDED, ("holds: " if o.status == PASS else "fails: ") + o.value)
        out.append(o)
    out += [_eq(f"{label} closed form = oracle", l, r) for label, l, r in derivative_routes(family, n, at)]
    return out


def suite_diff_formulas(family: Family, n: int, at) -> List[Outcome]:
    p = differentiation_polynomial(family, n, at)
    out = [_eq("leading coefficient", p.lead(), 1),
           _eq("operator route = oracle", p, oracle(family, at).polynomial(n))]
    try:
        out.append(_eq("operator route = recurrence route", p, _recurrence_route(family, n, at)))
    except DegenerateParameters:
        out.append(Outcome("operator route = recurrence route", SKIP, "alpha + beta + 1 = 0"))
    return out


def suite_diff_identities(family: Family, n: int, at) -> List[Outcome]:
    if family.kind is Kind.GEGENBAUER:
        # the symmetric diagonal of the Koornwinder identities; nothing new to check
        return []
    return [_eq(c.label, c.lhs, c.rhs) for c in operator_consistency(family, n)]


def suite_asymptotics(family: Family, n: int, at) -> List[Outcome]:
    return [_eq(label, l, r) for label, l, r in asymptotic_check(family, n)]


@dataclass(frozen=True)
class Suite:
    name: str
    parts: Tuple[Tuple[str, Callable, bool], ...]  # (id prefix, function, pointwise)
    families: Tuple[Kind, ...] = tuple(Kind)


ALL = tuple(Kind)
ONE_VAR = (Kind.KRALL_LAGUERRE, Kind.KRALL_JACOBI, Kind.GEGENBAUER)

SUITES: Dict[str, Suite] = {s.name: s for s in (
    Suite("orthogonality", (("orthogonality", suite_orthogonality, True),)),
    Suite("route-equality", (("route-equality", suite_route_equality, True),)),
    Suite("ode", (("ode", suite_ode, True), ("ode-limit", suite_ode_limit, False))),
    Suite("divisibility", (("divisibility", suite_divisibility, True),)),
    Suite("painleve", (("painleve", suite_painleve, False),), ONE_VAR),
    Suite("first-integrals", (("first-integrals", suite_first_integrals, True),)),
    Suite("schlesinger", (("schlesinger", suite_schlesinger, True),)),
    Suite("pde-system", (("pde-system", suite_pde_system, True),), (Kind.KOORNWINDER,)),
    Suite("toda", (("toda", suite_toda, True),)),
    Suite("diff-formulas", (("diff-formulas", suite_diff_formulas, True),
                            ("diff-identities", suite_diff_identities, False)),
          (Kind.KRALL_LAGUERRE, Kind.KOORNWINDER, Kind.GEGENBAUER)),
    Suite("asymptotics", (("asymptotics", suite_asymptotics, False),),
          (Kind.KRALL_LAGUERRE, Kind.KRALL_JACOBI, Kind.KOORNWINDER)),
)}

# suites whose one-variable checks are symbolic in t, so a point is not needed
_SYMBOLIC_FOR_ONE_VAR = {"first-integrals"}


def _lines(at) -> List[Dict[str, Fraction]]:
    """The two lines through a Koornwinder point: t2 fixed, then t1 fixed."""
    return [{"t2": at["t2"]}, {"t1": at["t1"]}]


def _line_label(line: Dict[str, Fraction]) -> str:
    (k, v), = line.items()
    return f"{k}={v}"


# -- grid -------------------------------------------------------------------------------

def _env_list(name: str, default: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    raw = os.environ.get(name)
    if not raw:
        return tuple(default)
    return tuple(Fraction(x.strip()) for x in raw.split(",") if x.strip())


def grid_caps() -> Dict[str, object]:
    """Grid defaults, overridable through KRALLPOLY_ALPHAS, KRALLPOLY_BETAS, KRALLPOLY_TS
    (comma-separated rationals) and KRALLPOLY_MAX_N."""
    alphas = _env_list("KRALLPOLY_ALPHAS", DEFAULT_ALPHAS)
    return {
        "alphas": alphas,
        "betas": _env_list("KRALLPOLY_BETAS", alphas),
        "ts": _env_list("KRALLPOLY_TS", DEFAULT_TS),
        "max_n": int(os.environ.get("KRALLPOLY_MAX_N", DEFAULT_MAX_N)),
    }


def grid_points(family: Family, ts: Sequence[Fraction]) -> List[Dict[str, Fraction]]:
    """One point per grid value; Koornwinder pairs each t with the next one cyclically."""
    if family.kind is Kind.KOORNWINDER:
        k = len(ts)
        return [{"t1": ts[i], "t2": ts[(i + 1) % k]} for i in range(k)]
    return [{"t": t} for t in ts]


def grid_families(names: Sequence[str], alphas, betas, perturb=()) -> List[Family]:
    out = []
    for name in names:
        kind = Kind(name)
        for a in alphas:
            for b in (betas if kind in (Kind.KRALL_JACOBI, Kind.KOORNWINDER) else (None,)):
                fam = Family.from_name(name, a, b)
                for k, delta in perturb:
                    fam = fam.perturbed(k, delta)
                out.append(fam)
    return out


@dataclass(frozen=True)
class WorkUnit:
    suite: str
    family: Family
    at: Optional[Tuple[Tuple[str, Fraction], ...]]
    ns: Tuple[int, ...]


def plan(suites: Sequence[str], families: Sequence[Family], points: Dict[Family, List[Dict[str, Fraction]]],
         ns: Sequence[int]) -> List[WorkUnit]:
    """Deterministic list of work units: suite, then family, then point."""
    units = []
    for name in suites:
        suite = SUITES[name]
        for fam in families:
            if fam.kind not in suite.families:
                continue
            for prefix, fn, pointwise in suite.parts:
                symbolic = (not pointwise) or (name in _SYMBOLIC_FOR_ONE_VAR and fam.kind is not Kind.KOORNWINDER)
                if symbolic:
                    units.append(WorkUnit(f"{name}/{prefix}", fam, None, tuple(ns)))
                else:
                    for p in points[fam]:
                        units.append(WorkUnit(f"{name}/{prefix}", fam, tuple(sorted(p.items())), tuple(ns)))
    return units


def _part(unit: WorkUnit) -> Tuple[str, Callable]:
    name, prefix = unit.suite.split("/")
    for pre, fn, _ in SUITES[name].parts:
        if pre == prefix:
            return prefix, fn
    raise KeyError(unit.suite)


def _params(family: Family, at) -> Dict[str, str]:
    p = {"alpha": str(family.alpha)}
    if family.kind in (Kind.KRALL_JACOBI, Kind.KOORNWINDER):
        p["beta"] = str(family.beta)
    for k, v in (at or ()):
        p[k] = str(v)
    if family.moment_shift:
        p["moment_shift"] = ",".join(f"{k}:{d}" for k, d in family.moment_shift)
    return p


def run_unit(unit: WorkUnit) -> List[CheckResult]:
    prefix, fn = _part(unit)
    at = dict(unit.at) if unit.at else None
    params = _params(unit.family, unit.at)
    out = []
    for n in unit.ns:
        start = time.perf_counter()
        try:
            outcomes = fn(unit.family, n, at)
        except DegenerateParameters as exc:
            outcomes = [Outcome(prefix, SKIP, str(exc))]
        except Exception as exc:  # noqa: BLE001  a crash inside a check is a failure of that check
            outcomes = [Outcome(prefix, FAIL, f"{type(exc).__name__}: {exc}")]
        elapsed = time.perf_counter() - start
        for o in outcomes:
            out.append(CheckResult(f"{prefix}: {o.name}", unit.family.kind.value, n, params,
                                   o.status, o.value, round(elapsed, 6)))
    return out


def run(units: Sequence[WorkUnit], jobs: int = 1) -> List[CheckResult]:
    """Run every unit; results keep the order of ``units`` whatever ``jobs`` is."""
    if jobs <= 1 or len(units) <= 1:
        chunks = [run_unit(u) for u in units]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(run_unit, units))
    return [r for chunk in chunks for r in chunk]


def summarize(results: Iterable[CheckResult]) -> Dict[str, int]:
    counts = {PASS: 0, FAIL: 0, SKIP: 0, RECORDED: 0}
    for r in results:
        counts[r.status] += 1
    counts["total"] = sum(counts.values())
    return counts


def verify(suites: Sequence[str] = tuple(SUITES), family_names: Sequence[str] = FAMILY_NAMES,
           alphas=None, betas=None, ts=None, max_n: Optional[int] = None, ns: Optional[Sequence[int]] = None,
           perturb: Sequence[Tuple[int, Fraction]] = (), jobs: int = 1,
           points: Optional[Sequence[Dict[str, Fraction]]] = None) -> List[CheckResult]:
    """Run the named suites over the grid; unspecified axes take the (env-overridable) defaults.

    ``points`` replaces the t-grid by explicit points; a point that does not
    name a family's variables is adapted (t -> t1 = t2 = t and back).
    """
    caps = grid_caps()
    if betas is None:
        betas = alphas if alphas is not None else caps["betas"]
    alphas = tuple(alphas) if alphas is not None else caps["alphas"]
    betas = tuple(betas)
    ts = tuple(ts) if ts is not None else caps["ts"]
    if ns is None:
        ns = range((caps["max_n"] if max_n is None else max_n) + 1)
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    families = grid_families(family_names, alphas, betas, perturb)
    if points is None:
        grid = {f: grid_points(f, ts) for f in families}
    else:
        grid = {f: [adapt_point(f, p) for p in points] for f in families}
    return run(plan(suites, families, grid, list(ns)), jobs)


def adapt_point(family: Family, point: Dict[str, Fraction]) -> Dict[str, Fraction]:
    if set(point) == set(family.variables):
        return dict(point)
    if family.kind is Kind.KOORNWINDER and "t" in point:
        return {"t1": point["t"], "t2": point["t"]}
    if family.kind is not Kind.KOORNWINDER and "t1" in point and point.get("t2", point["t1"]) == point["t1"]:
        return {"t": point["t1"]}
    raise ValueError(f"point {point} does not fit {family.kind.value}")
