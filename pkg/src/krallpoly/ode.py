"""Laguerre's second-order equation for semi-classical orthogonal polynomials.

Two independent constructions meet here.  The *definitional* one builds
Theta_n, Omega_n and K_n from the oracle's p_n, q_n and h_n together with
the polynomials U, V, W of the Pearson-type relation W f' = 2V f + U.  The
*display* one writes the same equation through the tau-function closed
forms y_n (z_n).  The displays are stated only up to an overall factor, so
they are compared with the assembled equation through an exact polynomial
ratio.

Every function takes ``at``: a full assignment of the deformation variables
gives rational coefficients, ``None`` keeps them symbolic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    DivisibilityFailure,
    RatFun,
    UniPoly,
    exact_divide,
    limit_at_infinity,
    specialize,
)
from .closed_forms import (
    DegenerateParameters,
    auxiliaries,
    closed_form_polynomials,
    classical_limit,
    limit_value,
    tau_data,
)
from .differentiation import differentiation_polynomial
from .hankel import classical_oracle, oracle
from .measures import Family, Kind, Point, moments, normalize_point

X = UniPoly([0, 1])
ONE = UniPoly([1])


def deformation_values(family: Family, at: Point = None) -> Dict[str, object]:
    """Each deformation variable as a Fraction (fixed) or a RatFun (symbolic)."""
    at = normalize_point(family, at)
    line = len(family.variables) == 2 and len(at) == 1
    return {v: at[v] if v in at else (RatFun(UniPoly([0, 1], v)) if line else RatFun.var(v))
            for v in family.variables}


def _poly(coeffs: Sequence) -> UniPoly:
    return UniPoly(list(coeffs))


@dataclass(frozen=True)
class SemiClassicalData:
    U: UniPoly
    V: UniPoly
    W: UniPoly


def semiclassical_data(family: Family, at: Point = None) -> SemiClassicalData:
    """U, V, W with W f' = 2V f + U for the Stieltjes transform f of the measure."""
    alpha, beta = family.alpha, family.beta
    vals = deformation_values(family, at)
    mu0 = moments(family, 1, at)[0]
    if family.kind is Kind.KRALL_LAGUERRE:
        t = vals["t"]
        W = _poly([0, 0, 1])
        V = _poly([0, alpha / 2, Fraction(-1, 2)])
        U = _poly([(-1 - alpha) / t, 1 + 1 / t])
        return SemiClassicalData(U, V, W)
    if family.kind is Kind.KRALL_JACOBI:
        t = vals["t"]
        W = _poly([0, 0, 1, -1])
        V = _poly([0, beta / 2, -(alpha + beta) / 2])
        U = _poly([-(beta + 1) / t, mu0 * (alpha + beta + 1)])
        return SemiClassicalData(U, V, W)
    if family.kind is Kind.KOORNWINDER:
        t1, t2 = vals["t1"], vals["t2"]
    else:
        t1 = t2 = vals["t"]
    x2m1 = _poly([-1, 0, 1])
    W = x2m1 * x2m1
    V = x2m1 * _poly([(alpha - beta) / 2, (alpha + beta) / 2])
    U = (_poly([-1, 1]) * (2 * (beta + 1) / t1)
         - _poly([1, 1]) * (2 * (alpha + 1) / t2)
         - x2m1 * (mu0 * (alpha + beta + 1)))
    return SemiClassicalData(U, V, W)


def pearson_residual(family: Family, at: Point = None, terms: int = 12) -> Dict[int, object]:
    """Nonzero coefficients of W f' - 2V f - U in powers of x.

    f is the moment series sum mu_k x^{-k-1} truncated after ``terms``
    moments; only exponents that the truncation cannot touch are kept.  An
    empty dict means the relation holds to that order.
    """
    sc = semiclassical_data(family, at)
    mu = moments(family, terms, at)
    series: Dict[int, object] = {}

    def add(exp, c):
        series[exp] = series.get(exp, 0) + c

    for j, w in enumerate(sc.W.coeffs):
        for k, m in enumerate(mu):
            add(j - k - 2, -(k + 1) * m * w)
    for j, v in enumerate(sc.V.coeffs):
        for k, m in enumerate(mu):
            add(j - k - 1, -2 * m * v)
    for j, u in enumerate(sc.U.coeffs):
        add(j, -u)
    floor = max(sc.W.degree - 1, sc.V.degree) - terms
    return {e: c for e, c in series.items() if e > floor and c}


# -- Theta_n and Omega_n -----------------------------------------------------------

def _specialized_oracle(family: Family, at: Point):
    return oracle(family, normalize_point(family, at) or None)


def theta_definitional(family: Family, n: int, at: Point = None) -> UniPoly:
    o = _specialized_oracle(family, at)
    sc = semiclassical_data(family, at)
    p, q = o.polynomial(n), o.numerator_polynomial(n)
    num = sc.W * (p * q.derivative() - q * p.derivative()) - sc.V * 2 * q * p - sc.U * p * p
    return num * (1 / o.h(n))


def omega_definitional(family: Family, n: int, at: Point = None) -> UniPoly:
    """Omega_n from p_n, p_{n-1}; at n = 0 it is V (the p_{-1} = 0 reading)."""
    sc = semiclassical_data(family, at)
    if n == 0:
        return sc.V
    o = _specialized_oracle(family, at)
    p, q = o.polynomial(n), o.numerator_polynomial(n)
    pm, qm = o.polynomial(n - 1), o.numerator_polynomial(n - 1)
    num = (sc.W * (q.derivative() * pm - p.derivative() * qm)
           - sc.V * (p * qm + q * pm) - sc.U * p * pm)
    return num * (1 / o.h(n - 1))


def theta_omega_definitional(family: Family, n: int, at: Point = None) -> Tuple[UniPoly, UniPoly]:
    theta, omega = theta_definitional(family, n, at), omega_definitional(family, n, at)
    sc = semiclassical_data(family, at)
    if theta.degree > max(sc.W.degree - 2, sc.V.degree - 1):
        raise AssertionError(f"deg Theta_{n} = {theta.degree} exceeds its bound")
    if omega.degree > max(sc.W.degree - 1, sc.V.degree):
        raise AssertionError(f"deg Omega_{n} = {omega.degree} exceeds its bound")
    return theta, omega


def theta_omega_closed_form(family: Family, n: int, at: Point = None) -> Tuple[UniPoly, UniPoly]:
    """Theta_n, Omega_n written through y_n (z_n) and the auxiliaries."""
    fam = family.classical()
    alpha = fam.alpha
    td = tau_data(fam, n)
    aux = auxiliaries(fam, n)
    y = specialize(td.y, at)
    if fam.kind is Kind.KRALL_LAGUERRE:
        u = specialize(aux.u, at)
        return _poly([y, -1]), _poly([u, n + alpha / 2, Fraction(-1, 2)])
    g = fam.gamma(n)
    gu, gv = specialize(aux.gu, at), specialize(aux.gv, at)
    if fam.kind is Kind.KRALL_JACOBI:
        theta = _poly([g * y, -g])
        omega = _poly([gu, gv, g - 1]) * Fraction(-1, 2)
        return theta, omega
    z = specialize(td.z, at)
    gw = specialize(aux.gw, at)
    x2m1 = _poly([-1, 0, 1])
    theta = (x2m1 + _poly([1, 1]) * (y / 2) + _poly([1, -1]) * (z / 2)) * g
    omega = (x2m1 * _poly([gu, g - 1]) + _poly([1, 1]) * (gv / 2)
             + _poly([1, -1]) * (gw / 2)) * Fraction(1, 2)
    return theta, omega


# -- K_n and divisibility ------------------------------------------------------------

def _recurrence_a(family: Family, n: int, at: Point, source: str):
    if n == 0:
        return Fraction(0)
    if source == "oracle":
        return _specialized_oracle(family, at).a(n)
    from .closed_forms import recurrence_from_closed_form
    return specialize(recurrence_from_closed_form(family, n)[0], at)


def _theta_omega(family: Family, n: int, at: Point, source: str):
    if source == "oracle":
        return theta_omega_definitional(family, n, at)
    return theta_omega_closed_form(family, n, at)


@dataclass
class DivisibilityReport:
    """Outcome of dividing a_n Theta_{n-1} Theta_n + V^2 - Omega_n^2 by W.

    ``quotient_matches`` compares the quotient with the sum
    Theta_0 + ... + Theta_{n-1}; ``negated_matches`` compares it with
    minus that sum, which is what the construction actually yields.
    """

    n: int
    divisible: bool
    quotient_matches: bool
    negated_matches: bool
    quotient: Optional[UniPoly]
    expected: UniPoly
    remainder: Optional[UniPoly]

    @property
    def ok(self) -> bool:
        return self.divisible and self.quotient_matches

    @property
    def ok_negated(self) -> bool:
        return self.divisible and self.negated_matches


def check_divisibility(family: Family, n: int, at: Point = None,
                       source: str = "oracle") -> DivisibilityReport:
    """a_n Theta_{n-1} Theta_n + V^2 - Omega_n^2 = W (Theta_0 + ... + Theta_{n-1})."""
    sc = semiclassical_data(family, at)
    theta, omega = _theta_omega(family, n, at, source)
    lhs = sc.V * sc.V - omega * omega
    if n >= 1:
        theta_prev = _theta_omega(family, n - 1, at, source)[0]
        lhs = lhs + theta_prev * theta * _recurrence_a(family, n, at, source)
    expected = UniPoly([])
    for i in range(n):
        expected = expected + _theta_omega(family, i, at, source)[0]
    try:
        quotient = exact_divide(lhs, sc.W)
    except DivisibilityFailure as exc:
        return DivisibilityReport(n, False, False, False, None, expected, exc.remainder)
    return DivisibilityReport(n, True, quotient == expected, quotient == -expected,
                              quotient, expected, None)


def k_polynomial(family: Family, n: int, at: Point = None, source: str = "oracle") -> UniPoly:
    """K_n; raises DivisibilityFailure when the W-division is not exact."""
    sc = semiclassical_data(family, at)
    theta, omega = _theta_omega(family, n, at, source)
    s = sc.V * sc.V - omega * omega
    if n >= 1:
        theta_prev = _theta_omega(family, n - 1, at, source)[0]
        s = s + theta_prev * theta * _recurrence_a(family, n, at, source)
    quotient = exact_divide(s, sc.W)
    d = sc.V - omega
    return d.derivative() * theta - d * theta.derivative() + quotient * theta


def mass_point_polynomial(family: Family) -> UniPoly:
    """x for the one-jump families, x^2 - 1 for the two-jump ones."""
    if family.kind in (Kind.KRALL_LAGUERRE, Kind.KRALL_JACOBI):
        return X
    return _poly([-1, 0, 1])


def k_divisible_by_mass_points(family: Family, n: int, at: Point = None,
                               source: str = "oracle") -> Tuple[bool, UniPoly]:
    k = k_polynomial(family, n, at, source)
    _, r = k.divmod(mass_point_polynomial(family))
    return r.is_zero(), k


# -- the second-order equation --------------------------------------------------------

OdeCoefficients = Tuple[UniPoly, UniPoly, UniPoly]


def lae_coefficients(family: Family, n: int, at: Point = None,
                     source: str = "oracle") -> OdeCoefficients:
    """(W Theta_n, (2V + W') Theta_n - W Theta_n', K_n)."""
    sc = semiclassical_data(family, at)
    theta, _ = _theta_omega(family, n, at, source)
    c2 = sc.W * theta
    c1 = (sc.V * 2 + sc.W.derivative()) * theta - sc.W * theta.derivative()
    return c2, c1, k_polynomial(family, n, at, source)


def display_coefficients(family: Family, n: int, at: Point = None) -> OdeCoefficients:
    """Coefficients of the explicit closed-form equation for g_n.

    Logarithmic derivatives are formed symbolically and only then
    specialized to ``at``.
    """
    fam = family.classical()
    alpha, beta = fam.alpha, fam.beta
    td = tau_data(fam, n)
    if fam.kind in (Kind.KRALL_LAGUERRE, Kind.KRALL_JACOBI, Kind.GEGENBAUER):
        t = RatFun.var("t")
        log_term = specialize(t * td.y.derivative("t") / td.y + 1, at)
        y = specialize(td.y, at)
    if fam.kind is Kind.KRALL_LAGUERRE:
        c2 = _poly([0, y, -1])
        c1 = _poly([y * (alpha + 2), -(alpha + 1) - y, 1])
        c0 = _poly([(alpha + 1) * log_term + (2 * n - 1) * y, -2 * n]) * Fraction(1, 2)
        return c2, c1, c0
    if fam.kind is Kind.KRALL_JACOBI:
        xm1 = _poly([-1, 1])
        xmy = _poly([-y, 1])
        c2 = X * xm1 * xmy
        c1 = xm1 * xmy * (beta + 2) + X * xmy * (alpha + 1) - X * xm1
        c0 = _poly([(beta + 1) * log_term + ((2 * n - 1) * (alpha + beta + 1) + 2 * n * n) * y,
                    -2 * n * (alpha + beta + n + 1)]) * Fraction(1, 2)
        return c2, c1, c0
    x2m1 = _poly([-1, 0, 1])
    if fam.kind is Kind.GEGENBAUER:
        c2 = x2m1 * _poly([y - 1, 0, 1])
        c1 = X * (x2m1 * (alpha + 1) + (alpha + 2) * y) * 2
        c0 = -(_poly([2 * (alpha + 1) * log_term + (2 * (n - 1) * alpha + n * n + n - 1) * y])
               + x2m1 * (n * (2 * alpha + n + 1)))
        return c2, c1, c0
    t1 = RatFun.var("t1")
    yy, zz = td.y, td.z
    log_z = specialize(t1 * zz.derivative("t1") / zz + 1, at)
    s_term = specialize(t1 * yy.derivative("t1") / (yy * zz), at) - (alpha + beta + 1) / (4 * (beta + 1))
    y, z = specialize(yy, at), specialize(zz, at)
    ab = alpha + beta
    xp1, xm1 = _poly([1, 1]), _poly([1, -1])
    c2 = x2m1 * (x2m1 + xp1 * (y / 2) + xm1 * (z / 2))
    c1 = (x2m1 * _poly([alpha - beta, ab + 2])
          + xp1 * _poly([alpha - beta + 1, ab + 3]) * (y / 2)
          + xm1 * _poly([alpha - beta - 1, ab + 3]) * (z / 2))
    brace = (x2m1 * (n * (ab + n + 1))
             - _poly([y - z, 4]) * ((beta + 1) * log_z / 2)
             + (xp1 * (2 * (y + z - 4)) + z * (y - z + 4)) * ((beta + 1) * s_term / 2)
             + xp1 * ((n * (ab + n + 1) * y - ((n - 1) * ab + n * n + n - 1) * z) / 2)
             + _poly([z / 8 * ((ab + 1) * (y - z) + 4 * ((2 * n - 1) * ab + 2 * n * n + 2 * n - 1))]))
    return c2, c1, -brace


def apply_ode(coeffs: OdeCoefficients, g: UniPoly) -> UniPoly:
    c2, c1, c0 = coeffs
    d1 = g.derivative()
    return c2 * d1.derivative() + c1 * d1 + c0 * g


def expected_lae_ratio(family: Family, n: int) -> UniPoly:
    """The polynomial factor by which the assembled equation exceeds the display."""
    if family.kind is Kind.KRALL_LAGUERRE:
        return X
    g = family.gamma(n)
    if family.kind is Kind.KRALL_JACOBI:
        return X * g
    return _poly([-1, 0, 1]) * g


@dataclass
class OdeReport:
    family: Family
    n: int
    residual_display: UniPoly
    residual_lae: UniPoly
    ratio: Optional[UniPoly]
    proportional: bool
    ratio_expected: bool

    @property
    def ok(self) -> bool:
        return (self.residual_display.is_zero() and self.residual_lae.is_zero()
                and self.proportional and self.ratio_expected)


def proportionality(lhs: OdeCoefficients, rhs: OdeCoefficients) -> Tuple[Optional[UniPoly], bool]:
    """(r, ok) with lhs_k = r * rhs_k for k = 0, 1, 2; r from the leading pair."""
    try:
        ratio = exact_divide(lhs[0], rhs[0])
    except DivisibilityFailure:
        return None, False
    return ratio, all(a == ratio * b for a, b in zip(lhs, rhs))


def route_polynomial(family: Family, n: int, at: Point = None, route: str = "hankel") -> UniPoly:
    if route == "hankel":
        return _specialized_oracle(family, at).polynomial(n)
    if route == "recurrence":
        return closed_form_polynomials(family, n, at)[n]
    if route == "diff":
        return differentiation_polynomial(family, n, at)
    raise ValueError(f"unknown route {route!r}")


def laguerre_ode_residual(family: Family, n: int, at: Point = None,
                          route: str = "hankel") -> OdeReport:
    """Residuals of p_n in the display and in the assembled equation, plus their link."""
    p = route_polynomial(family, n, at, route)
    disp = display_coefficients(family, n, at)
    lae = lae_coefficients(family, n, at)
    ratio, prop = proportionality(lae, disp)
    expected = expected_lae_ratio(family, n)
    return OdeReport(family, n, apply_ode(disp, p), apply_ode(lae, p), ratio, prop,
                     ratio is not None and ratio == expected)


# -- the classical limit ---------------------------------------------------------------

def classical_ode_coefficients(family: Family, n: int) -> OdeCoefficients:
    alpha, beta = family.alpha, family.beta
    if family.kind is Kind.KRALL_LAGUERRE:
        return _poly([0, -1]), _poly([-alpha - 1, 1]), _poly([-n])
    if family.kind is Kind.KRALL_JACOBI:
        return (_poly([0, -1, 1]), _poly([-beta - 1, alpha + beta + 2]),
                _poly([-n * (alpha + beta + n + 1)]))
    if family.kind is Kind.KOORNWINDER:
        return (_poly([-1, 0, 1]), _poly([alpha - beta, alpha + beta + 2]),
                _poly([-n * (alpha + beta + n + 1)]))
    return _poly([1, 0, -1]), _poly([0, -2 * (alpha + 1)]), _poly([n * (2 * alpha + n + 1)])


def classical_polynomial(family: Family, n: int) -> UniPoly:
    """Monic classical p_n from the t -> infinity limits of the closed-form recurrence."""
    from .closed_forms import polynomials_from_recurrence
    try:
        coeffs = [classical_limit(family, k) for k in range(n)]
    except DegenerateParameters:
        # singular closed forms; the jump-free moments still determine p_n
        return classical_oracle(family).polynomial(n)
    return polynomials_from_recurrence(coeffs, n)[n]


def classical_ode_residual(family: Family, n: int) -> UniPoly:
    return apply_ode(classical_ode_coefficients(family, n), classical_polynomial(family, n))


def display_limit(family: Family, n: int) -> OdeCoefficients:
    """Coefficientwise t -> infinity limit of the symbolic display (t1 = t2 = t)."""
    return tuple(UniPoly([limit_value(c) for c in poly.coeffs])
                 for poly in display_coefficients(family, n, None))


def classical_limit_ratio(family: Family, n: int) -> Tuple[Optional[UniPoly], bool]:
    """(r, ok): the limit display equals r times the classical equation."""
    return proportionality(display_limit(family, n), classical_ode_coefficients(family, n))
