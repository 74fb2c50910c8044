"""Tau-function closed forms and the recurrence coefficients built from them.

Everything here is symbolic in the deformation variables: ``t`` for the
one-jump families and the Krall-Gegenbauer case, ``(t1, t2)`` for
Koornwinder.  Derivatives are exact.  Auxiliary quantities that carry a
removable factor 1/(gamma_n - 1) are also stored premultiplied by
(gamma_n - 1), and downstream code only ever uses the premultiplied form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import (
    BiPoly,
    RatFun,
    UniPoly,
    expand_at_infinity,
    factorial,
    pochhammer,
    pochhammer_ext,
    specialize,
)
from .hankel import oracle
from .measures import Family, Kind, Point


class DegenerateParameters(ArithmeticError):
    """The closed form divides by alpha + beta + 1 = 0 at this index."""


def _nonzero(value, what: str):
    if value == 0:
        raise DegenerateParameters(f"{what} vanishes; the closed form is singular here")
    return value


def _t() -> RatFun:
    return RatFun.var("t")


def _t1() -> RatFun:
    return RatFun.var("t1")


def _t2() -> RatFun:
    return RatFun.var("t2")


# -- tau functions and y_n --------------------------------------------------

def tau_krall_laguerre(n: int, alpha) -> RatFun:
    return factorial(n) * _t() + pochhammer(Fraction(alpha) + 2, n)


@lru_cache(maxsize=None)
def y_krall_laguerre(n: int, alpha) -> RatFun:
    alpha = Fraction(alpha)
    t = _t()
    if n == 0:
        return (alpha + 1) / (t + 1)
    num = factorial(n - 1) * (alpha + 1) ** 2 * pochhammer(alpha + 2, n - 1) * t
    return num / (tau_krall_laguerre(n - 1, alpha) * tau_krall_laguerre(n, alpha))


def tau_krall_jacobi(n: int, alpha, beta) -> RatFun:
    alpha, beta = Fraction(alpha), Fraction(beta)
    return (factorial(n) * pochhammer(alpha + 1, n) * _t()
            + pochhammer(alpha + beta + 2, n) * pochhammer(beta + 2, n))


@lru_cache(maxsize=None)
def y_krall_jacobi(n: int, alpha, beta) -> RatFun:
    alpha, beta = Fraction(alpha), Fraction(beta)
    t = _t()
    if n == 0:
        return (beta + 1) / (_nonzero(alpha + beta + 1, "alpha + beta + 1") * (t + 1))
    num = (factorial(n - 1) * (beta + 1) * pochhammer(alpha + 1, n - 1)
           * pochhammer(beta + 1, n) * pochhammer(alpha + beta + 2, n - 1)) * t
    return num / (tau_krall_jacobi(n - 1, alpha, beta) * tau_krall_jacobi(n, alpha, beta))


def koornwinder_k(n: int, alpha, beta) -> Tuple[Fraction, Fraction]:
    """The integration constants (k1, k2) fixed by the behaviour at infinity."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    common = factorial(n) / pochhammer(alpha + beta + 2, n)
    k1 = common * (beta + 1) * pochhammer(alpha + 1, n) / pochhammer(beta + 1, n)
    k2 = common * (alpha + 1) * pochhammer(beta + 1, n) / pochhammer(alpha + 1, n)
    return k1, k2


def koornwinder_sigma_tau(n: int, alpha, beta) -> Tuple[BiPoly, BiPoly]:
    """sigma_n and tau_n as polynomials in (t1, t2); both are swap-invariant."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    k1, k2 = koornwinder_k(n, alpha, beta)
    sigma = BiPoly({(0, 0): n * n * (n - 1), (1, 0): n * (beta + n) * k1,
                    (0, 1): n * (alpha + n) * k2, (1, 1): (alpha + beta + n + 1) * k1 * k2})
    tau = BiPoly({(1, 1): k1 * k2, (1, 0): (alpha + n + 1) * k1,
                  (0, 1): (beta + n + 1) * k2, (0, 0): n * (alpha + beta + n + 2)})
    return sigma, tau


def _y_koornwinder(n: int, alpha: Fraction, beta: Fraction) -> RatFun:
    k1, k2 = koornwinder_k(n, alpha, beta)
    sigma, tau = koornwinder_sigma_tau(n, alpha, beta)
    if n == 0:
        _nonzero(alpha + beta + 1, "alpha + beta + 1")
    t1, t2 = BiPoly.gen("t1"), BiPoly.gen("t2")
    num = (t1 * k1 + n) ** 2 * t2 * (4 * (alpha + 1) ** 2 * k2)
    return RatFun(num, sigma * tau)


@lru_cache(maxsize=None)
def yz_koornwinder(n: int, alpha, beta) -> Tuple[RatFun, RatFun]:
    """(y_n, z_n) with z_n(t1, t2, alpha, beta) = y_n(t2, t1, beta, alpha)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    y = _y_koornwinder(n, alpha, beta)
    z = _y_koornwinder(n, beta, alpha).swap()
    return y, z


def tau_tilde_gegenbauer(m: int, alpha) -> RatFun:
    """(alpha+1) t + (2 alpha + 2)_{m+1} / m!, and (alpha+1) t at m = -1."""
    alpha = Fraction(alpha)
    base = (alpha + 1) * _t()
    if m < 0:
        return base
    return base + pochhammer(2 * alpha + 2, m + 1) / factorial(m)


@lru_cache(maxsize=None)
def x_gegenbauer(n: int, alpha) -> RatFun:
    alpha = Fraction(alpha)
    t = _t()
    if n == 0:
        return 4 * (alpha + 1) / (_nonzero(2 * alpha + 1, "2 alpha + 1") * (t + 2))
    num = 4 * (alpha + 1) ** 3 * pochhammer(2 * alpha + 2, n - 1) * t
    return num / (factorial(n) * tau_tilde_gegenbauer(n - 2, alpha) * tau_tilde_gegenbauer(n, alpha))


@dataclass(frozen=True)
class TauData:
    family: Family
    n: int
    tau: tuple
    y: RatFun
    z: Optional[RatFun] = None


def tau_data(family: Family, n: int) -> TauData:
    a, b = family.alpha, family.beta
    if family.kind is Kind.KRALL_LAGUERRE:
        taus = (tau_krall_laguerre(n - 1, a) if n else None, tau_krall_laguerre(n, a))
        return TauData(family, n, taus, y_krall_laguerre(n, a))
    if family.kind is Kind.KRALL_JACOBI:
        taus = (tau_krall_jacobi(n - 1, a, b) if n else None, tau_krall_jacobi(n, a, b))
        return TauData(family, n, taus, y_krall_jacobi(n, a, b))
    if family.kind is Kind.KOORNWINDER:
        y, z = yz_koornwinder(n, a, b)
        return TauData(family, n, koornwinder_sigma_tau(n, a, b), y, z)
    taus = (tau_tilde_gegenbauer(n - 2, a), tau_tilde_gegenbauer(n, a))
    x = x_gegenbauer(n, a)
    return TauData(family, n, taus, x, x)


# -- auxiliaries ---------------------------------------------------------------

@dataclass(frozen=True)
class AuxData:
    """u, v, w of the Omega_n display and their (gamma_n - 1)-multiples.

    The plain fields are None where gamma_n = 1 makes them undefined; the
    ``g*`` fields are always set for the families that have a gamma_n.
    For Krall-Laguerre only ``u`` is meaningful.
    """

    family: Family
    n: int
    u: object
    v: object = None
    w: object = None
    gu: object = None
    gv: object = None
    gw: object = None


def _aux_krall_laguerre(family: Family, n: int) -> AuxData:
    alpha = family.alpha
    y = y_krall_laguerre(n, alpha)
    t = _t()
    u = (y * y - (2 * n + 1 + alpha) * y - (alpha + 1) * t * y.derivative("t")) / 2
    return AuxData(family, n, u)


def _aux_krall_jacobi(family: Family, n: int) -> AuxData:
    alpha, beta = family.alpha, family.beta
    g = family.gamma(n)
    if g == 1:
        # n = 0 with alpha + beta = 0: c_0 = d_0 = 0 and a_0 = 0 give the products
        return AuxData(family, n, None, None, None, Fraction(0), -beta)
    y = y_krall_jacobi(n, alpha, beta)
    tyd = (beta + 1) * _t() * y.derivative("t")
    u = (alpha ** 2 * y * y - (tyd + g * y * (1 - y)) ** 2) / (2 * (g - 1) ** 2 * y * (y - 1))
    v = (-tyd / ((g - 1) ** 2 * y)
         - tyd * tyd / (2 * (g - 1) ** 2 * y * y * (1 - y))
         + alpha ** 2 / (2 * (g - 1) ** 2 * (1 - y))
         - (g * (g - 2) * (y + 1) + 2) / (2 * (g - 1) ** 2))
    return AuxData(family, n, u, v, None, (g - 1) * u, (g - 1) * v)


def _aux_koornwinder(family: Family, n: int) -> AuxData:
    alpha, beta = family.alpha, family.beta
    g = family.gamma(n)
    if g == 1:
        # n = 0 with alpha + beta = 0: empty sums and a_0 = 0
        return AuxData(family, n, None, None, None, alpha - beta, Fraction(0), Fraction(0))
    y, z = yz_koornwinder(n, alpha, beta)
    t1 = _t1()
    dy = (beta + 1) * t1 * y.derivative("t1")
    dz = (beta + 1) * t1 * z.derivative("t1")
    g1sq = (g - 1) ** 2
    u = (g * (g - 2) * (y - z) / (4 * g1sq) - Fraction(1) / g1sq
         + 2 * (dy - dz) / (g1sq * z)
         + 8 * dy * dz / (g1sq * y * z * z)
         - 4 * (y + z - 4) * dy * dy / (g1sq * y * y * z * z))
    lead = 4 * dy - g * y * z
    brace_common = -4 * (y + z - 4) * dy + 8 * y * dz
    v = lead / (4 * g1sq * y * z * z) * (brace_common + y * z * (g * (y - z) - 4 * (g - 2)))
    w = lead / (4 * g1sq * y * y * z) * (brace_common + g * y * z * (y - z + 4))
    return AuxData(family, n, u, v, w, (g - 1) * u, (g - 1) * v, (g - 1) * w)


def _aux_gegenbauer(family: Family, n: int) -> AuxData:
    alpha = family.alpha
    g = family.gamma(n)
    x = x_gegenbauer(n, alpha)
    t = _t()
    gv = (g * x * x - (g + 1) * x - 2 * t * (alpha + 1) * x.derivative("t")) / (x - 1)
    zero = RatFun.const(0)
    if g == 1:
        return AuxData(family, n, zero, None, None, zero, gv, -gv)
    v = gv / (g - 1)
    return AuxData(family, n, zero, v, -v, zero, gv, -gv)


_AUX = {
    Kind.KRALL_LAGUERRE: _aux_krall_laguerre,
    Kind.KRALL_JACOBI: _aux_krall_jacobi,
    Kind.KOORNWINDER: _aux_koornwinder,
    Kind.GEGENBAUER: _aux_gegenbauer,
}


@lru_cache(maxsize=None)
def auxiliaries(family: Family, n: int) -> AuxData:
    return _AUX[family.kind](family.classical(), n)


# -- recurrence coefficients ---------------------------------------------------

def _a_from_closed_form(family: Family, n: int):
    if n == 0:
        return Fraction(0)
    alpha = family.alpha
    if family.kind is Kind.KRALL_LAGUERRE:
        y = y_krall_laguerre(n, alpha)
        u = auxiliaries(family, n).u
        return -u * (u + (2 * n + alpha) * y) / (y * y)
    g, gm = family.gamma(n), _nonzero(family.gamma(n - 1), "gamma_{n-1}")
    aux = auxiliaries(family, n)
    if family.kind is Kind.KRALL_JACOBI:
        y = y_krall_jacobi(n, alpha, family.beta)
        return -aux.gu * (2 * aux.gv * y + aux.gu) / (4 * gm * g * y * y)
    if family.kind is Kind.GEGENBAUER:
        x = x_gegenbauer(n, alpha)
        return aux.gv * (2 * (g - 1) * x + aux.gv * (x - 1)) / (4 * gm * g * x * x)
    y, z = yz_koornwinder(n, alpha, family.beta)
    gv, gw = aux.gv, aux.gw
    cross = gv * z - gw * y
    brace = ((gw - gv) * cross / (16 * y * z)
             + (g - 1) * gv * gw / cross
             - gv * gw / (4 * y * z))
    return -brace / (gm * g)


def _b_from_closed_form(family: Family, n: int):
    alpha = family.alpha
    if family.kind is Kind.KRALL_LAGUERRE:
        return 2 * n + 1 + alpha - y_krall_laguerre(n, alpha)
    if family.kind is Kind.GEGENBAUER:
        return RatFun.const(0)
    g = family.gamma(n)
    if family.kind is Kind.KRALL_JACOBI:
        y = y_krall_jacobi(n, alpha, family.beta)
        return (-auxiliaries(family, n).gv + 1 - g * y) / (g + 1)
    if n == 0:
        _nonzero(family.gamma0, "alpha + beta + 1")
    return (auxiliaries(family, n + 1).gu - auxiliaries(family, n).gu) / 2


@lru_cache(maxsize=None)
def recurrence_from_closed_form(family: Family, n: int) -> Tuple[object, object]:
    """(a_n, b_n) from the tau-function solutions, symbolic in the deformation."""
    fam = family.classical()
    return _a_from_closed_form(fam, n), _b_from_closed_form(fam, n)


def closed_form_recurrence(family: Family, N: int) -> List[Tuple[object, object]]:
    return [recurrence_from_closed_form(family, n) for n in range(N + 1)]


def limit_value(f) -> Fraction:
    """Value at infinity; Koornwinder functions are restricted to t1 = t2 = t first."""
    if not isinstance(f, RatFun):
        return Fraction(f)
    if f.is_bivariate:
        f = f.diagonal("t")
    return expand_at_infinity(f, 0)[0]


def classical_limit(family: Family, n: int) -> Tuple[Fraction, Fraction]:
    """(a_n, b_n) of the classical family as limits of the closed forms."""
    a, b = recurrence_from_closed_form(family, n)
    return limit_value(a), limit_value(b)


def polynomials_from_recurrence(coeffs: Sequence[Tuple[object, object]], N: int,
                                var: str = "x") -> List[UniPoly]:
    """Monic p_0..p_N from p_{n+1} = (x - b_n) p_n - a_n p_{n-1}."""
    if N < 0:
        return []
    if len(coeffs) < N:
        raise ValueError(f"need (a_n, b_n) for n < {N}, have {len(coeffs)}")
    one = Fraction(1)
    x = UniPoly([0, 1], var)
    prev, cur = UniPoly([], var), UniPoly([one], var)
    out = [cur]
    for n in range(N):
        a, b = coeffs[n]
        nxt = (x - b) * cur - prev * a if a else (x - b) * cur
        prev, cur = cur, nxt
        out.append(cur)
    return out


def closed_form_polynomials(family: Family, N: int, at: Point = None) -> List[UniPoly]:
    """Recurrence-route p_0..p_N, specialized to ``at``."""
    coeffs = [(specialize(a, at), specialize(b, at))
              for a, b in closed_form_recurrence(family, N - 1)] if N > 0 else []
    return polynomials_from_recurrence(coeffs, N)


# -- the same quantities read off the oracle ---------------------------------

def theta_omega_from_oracle(family: Family, n: int, at: Point = None) -> Dict[str, object]:
    """y_n (and z_n) with the (gamma_n - 1)-multiples of u_n, v_n, w_n from oracle data.

    Uses a_i, b_i, c_i, d_i for i <= n + 1 only, never a closed form.
    """
    o = oracle(family, at)
    recs = o.recurrence(n + 1)
    a = [r.a for r in recs]
    b = [r.b for r in recs]
    c = [r.c for r in recs]
    d = [r.d for r in recs]
    alpha, beta = family.alpha, family.beta
    zero = a[0] * 0
    bsum = sum(b[:n], zero)
    if family.kind is Kind.KRALL_LAGUERRE:
        return {"y": -b[n] + 2 * n + 1 + alpha, "u": -a[n] + bsum}
    g = _nonzero(family.gamma(n), "gamma_n")
    if family.kind is Kind.KRALL_JACOBI:
        y = (-(1 + g) * b[n] + beta + 2 * c[n] + 2 * n + 1) / g
        gv = -(beta + 2 * c[n] + 2 * n)
        gu = 2 * g * a[n] + 2 * c[n] * (c[n] + 1) - 4 * d[n]
        return {"y": y, "gu": gu, "gv": gv}
    asum = sum(a[1:n], zero)
    b2sum = sum((bi * bi for bi in b[:n]), zero)
    b_prev = b[n - 1] if n >= 1 else zero
    gy = ((alpha + beta + 2 * n + 3) * (a[n] + a[n + 1] + b[n] ** 2) - 2 * b[n] * c[n]
          + 4 * asum + 2 * b2sum + 2 * (alpha + n) * b[n] - 2 * c[n + 1]
          + alpha - beta - 2 * n - 1)
    y = gy / g
    z = y + 2 * (beta - alpha - (alpha + beta + 2 * n) * b[n] + 2 * c[n + 1]) / g
    gu = alpha - beta - 2 * c[n]
    half_gv = ((alpha + beta) * a[n] * (b_prev + b[n]) + 2 * alpha * a[n] + 2 * asum
               + 3 * sum((a[i] * (b[i - 1] + b[i]) for i in range(1, n)), zero)
               + 2 * a[n] * sum(b[:max(n - 1, 0)], zero)
               + sum((bi ** 3 + bi ** 2 - bi for bi in b[:n]), zero)
               + a[n] * ((2 * n + 3) * b_prev + (2 * n + 2) * b[n] + 2 * n + 1) - n)
    gv = 2 * half_gv
    gw = gv + 4 * (n - g * a[n] - 2 * asum - b2sum)
    return {"y": y, "z": z, "gu": gu, "gv": gv, "gw": gw}


def closed_form_shape(family: Family, n: int) -> Dict[str, object]:
    """The closed-form counterpart of :func:`theta_omega_from_oracle`."""
    td = tau_data(family, n)
    aux = auxiliaries(family, n)
    if family.kind is Kind.KRALL_LAGUERRE:
        return {"y": td.y, "u": aux.u}
    if family.kind is Kind.KRALL_JACOBI:
        return {"y": td.y, "gu": aux.gu, "gv": aux.gv}
    return {"y": td.y, "z": td.z, "gu": aux.gu, "gv": aux.gv, "gw": aux.gw}


# -- identities among consecutive closed forms --------------------------------

def backward_consistency(family: Family, n: int) -> List[Tuple[str, object, object]]:
    """(label, lhs, rhs) triples of the relations linking index n - 1 to index n.

    These come from the exact division of the x-equation numerator by W and must
    hold as identities of rational functions.
    """
    if n < 1:
        raise ValueError("the backward relations need n >= 1")
    fam = family.classical()
    alpha, beta = fam.alpha, fam.beta
    a, _ = recurrence_from_closed_form(fam, n)
    aux = auxiliaries(fam, n)
    prev = tau_data(fam, n - 1)
    cur = tau_data(fam, n)
    y, ym = cur.y, prev.y
    if fam.kind is Kind.KRALL_LAGUERRE:
        u = aux.u
        return [
            ("quadratic divisibility", a * ym * y - u * u, 0),
            ("linear divisibility", a * (ym + y) + (2 * n + alpha) * u, 0),
            ("previous y", ym, -u * y / (u + (2 * n + alpha) * y)),
        ]
    g = fam.gamma(n)
    if fam.kind is Kind.KRALL_JACOBI:
        gu, gv = aux.gu, aux.gv
        return [
            ("previous y", ym, -gu * y / (2 * gv * y + gu)),
            ("a from u, v", a, -gu * (2 * gv * y + gu) / (4 * fam.gamma(n - 1) * g * y * y)),
            ("divisibility at x = 1", (gu + gv * y) ** 2,
             (alpha ** 2 - (g - 1) ** 2 - 2 * (g - 1) * (gu + gv)) * y * y),
        ]
    z, zm = cur.z, prev.z
    gu, gv, gw = aux.gu, aux.gv, aux.gw
    cross = gv * z - gw * y
    den = (gw - gv) * cross * cross - 4 * gv * gw * cross + 16 * (g - 1) * gv * gw * y * z
    return [
        ("previous y", ym, -4 * gv * gv * z * cross / den),
        ("previous z", zm, -4 * gw * gw * y * cross / den),
        ("u from y, z, v, w", gu,
         (y - z) * cross / (8 * y * z) + (z * gv + y * gw) / (2 * y * z)
         - (g - 1) * (z * gv + y * gw) / cross),
    ]
