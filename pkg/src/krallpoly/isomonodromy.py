"""Isomonodromic structure of the Krall families.

The pair (p_n, p_{n-1}) solves a first-order 2x2 system Z' = A Z in x with
A = M / W.  Moving a mass weight is generated by a second matrix H with a
simple pole at that mass point, and compatibility of the two flows is the
Schlesinger equation dA/dt = dH/dx + [H, A].  This module assembles both
matrices from independent sources (A from the tau-function closed forms,
H from the Hankel oracle) and checks the compatibility residual together
with its scalar consequences: the Painleve III / V equations, their first
integrals, the two-variable system of the Koornwinder case and the
expansions at infinity.

Checks run on a *line*.  ``at`` may fix some deformation variables; the
variable being differentiated is either left free (the check is then an
identity of rational functions in it) or fixed too, in which case every
derivative is taken symbolically before the value is substituted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .algebra import (
    RatFun,
    UniPoly,
    exact_divide,
    expand_at_infinity,
    expand_bivariate_at_infinity,
    factorial,
    pochhammer,
    pochhammer_ext,
    specialize,
)
from .closed_forms import (
    auxiliaries,
    koornwinder_k,
    recurrence_from_closed_form,
    tau_data,
    x_gegenbauer,
    y_krall_jacobi,
    y_krall_laguerre,
    yz_koornwinder,
)
from .hankel import oracle
from .measures import Family, Kind, Point, normalize_point
from .ode import semiclassical_data, theta_omega_closed_form

Matrix = List[List[object]]
Check = Tuple[str, object, object]


# -- 2x2 matrices over polynomials in x --------------------------------------------

def _entrywise(fn, *mats) -> Matrix:
    return [[fn(*(m[i][j] for m in mats)) for j in range(2)] for i in range(2)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return _entrywise(lambda p, q: p + q, a, b)


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return _entrywise(lambda p, q: p - q, a, b)


def mat_scale(a: Matrix, c) -> Matrix:
    return _entrywise(lambda p: p * c, a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_at(a: Matrix, x0) -> Matrix:
    """Entrywise value at x = x0 of a matrix of polynomials."""
    return _entrywise(lambda p: p(x0) if isinstance(p, UniPoly) else p, a)


def mat_is_zero(a: Matrix) -> bool:
    return all(not a[i][j] for i in range(2) for j in range(2))


def _diag(d0, d1) -> Matrix:
    zero = d0 * 0
    return [[d0, zero], [zero, d1]]


# -- restriction to a line -----------------------------------------------------------

def _others(at: Point, var: str) -> Optional[Dict[str, Fraction]]:
    rest = {k: v for k, v in (at or {}).items() if k != var}
    return rest or None


def _restrict(f, var: str, at: Point):
    """f with every deformation variable except ``var`` fixed per ``at``."""
    return specialize(f, _others(at, var)) if isinstance(f, RatFun) else Fraction(f)


def _finish(f, var: str, at: Point):
    """Substitute ``var`` last, once derivatives have been taken."""
    if at and var in at and isinstance(f, RatFun):
        return specialize(f, {var: at[var]})
    return f


def _d(f, var: str):
    return f.derivative(var) if isinstance(f, RatFun) else Fraction(0)


def _poly_map(p: UniPoly, fn) -> UniPoly:
    return UniPoly([fn(c) for c in p.coeffs])


def _var_value(family: Family, var: str, at: Point):
    """The deformation variable itself: fixed by ``at`` or symbolic on the line."""
    if at and var in at:
        return Fraction(at[var])
    return _line_var(family, var, at)


def _line_var(family: Family, var: str, at: Point) -> RatFun:
    """``var`` as a rational function in the ring used on the line."""
    if len(family.variables) == 2 and _others(at, var):
        return RatFun(UniPoly([0, 1], var))
    return RatFun.var(var)


def _weight_variables(family: Family) -> Dict[Fraction, str]:
    """Mass point -> the deformation variable whose reciprocal is its weight."""
    if family.kind is Kind.KOORNWINDER:
        return {Fraction(-1): "t1", Fraction(1): "t2"}
    if family.kind is Kind.GEGENBAUER:
        return {Fraction(-1): "t", Fraction(1): "t"}
    return {Fraction(0): "t"}


def _check_var(family: Family, var: str) -> None:
    if var not in family.variables:
        raise ValueError(f"{family.kind.value} has no deformation variable {var!r}")


# -- the matrices ---------------------------------------------------------------

@dataclass
class SchlesingerData:
    """A = numerator / W and H = sum_a poles[a] / (x - a) + h_infinity.

    ``numerator_rate`` is the derivative of the numerator in ``var``.  The
    residue dictionary holds the partial-fraction pieces of A that the
    explicit displays refer to.
    """

    family: Family
    n: int
    var: str
    W: UniPoly
    numerator: Matrix
    numerator_rate: Matrix
    poles: Dict[Fraction, Matrix]
    h_infinity: Matrix
    residues: Dict[str, Matrix] = field(default_factory=dict)


def _numerator_matrix(family: Family, n: int, at: Point, var: str):
    """M = [[Omega_n - V, -a_n Theta_n], [Theta_{n-1}, -Omega_n - V]] on the line, and dM/dvar."""
    line_at = _others(at, var)
    sc = semiclassical_data(family, at)
    theta, omega = theta_omega_closed_form(family, n, line_at)
    theta_prev, _ = theta_omega_closed_form(family, n - 1, line_at)
    a = _restrict(recurrence_from_closed_form(family, n)[0], var, at)
    V = sc.V
    m = [[omega - V, theta * (-a)], [theta_prev, -omega - V]]
    rate = _entrywise(lambda p: _poly_map(p, lambda c: _finish(_d(c, var), var, at)), m)
    value = _entrywise(lambda p: _poly_map(p, lambda c: _finish(c, var, at)), m)
    return sc.W, value, rate


def _residues(family: Family, n: int, M: Matrix) -> Dict[str, Matrix]:
    if family.kind is Kind.KRALL_LAGUERRE:
        # W = x^2: A = A0 / x^2 + A1 / x + A_inf
        return {k: _entrywise(lambda p, k=i: p.coeff(k), M)
                for i, k in enumerate(("A0", "A1", "Ainf"))}
    if family.kind is Kind.KRALL_JACOBI:
        # W = x^2 (1 - x): A = A0 / x^2 + A1 / x + A2 / (x - 1)
        m0, m1 = mat_at(M, 0), mat_at(M, 1)
        dm0 = mat_at(_entrywise(lambda p: p.derivative(), M), 0)
        return {"A0": m0, "A1": mat_add(dm0, m0), "A2": mat_scale(m1, -1)}
    # W = (x^2 - 1)^2: coefficients of 1/(x + 1)^2 and 1/(x - 1)^2
    return {"A1": mat_scale(mat_at(M, -1), Fraction(1, 4)),
            "A2": mat_scale(mat_at(M, 1), Fraction(1, 4))}


def schlesinger_matrices(family: Family, n: int, at: Point = None,
                         var: Optional[str] = None) -> SchlesingerData:
    """A from the closed forms and H from the oracle, for the flow in ``var``."""
    if n < 1:
        raise ValueError("the matrix system needs n >= 1")
    var = var or family.variables[0]
    _check_var(family, var)
    at = normalize_point(family, at) or None
    W, M, M_rate = _numerator_matrix(family, n, at, var)

    o = oracle(family, _others(at, var))
    h_prev = o.h(n - 1)
    p_n, p_prev = o.polynomial(n), o.polynomial(n - 1)
    t = _line_var(family, var, at)
    poles: Dict[Fraction, Matrix] = {}
    for point, weight_var in _weight_variables(family).items():
        if weight_var != var:
            continue
        pn, pm = p_n(point), p_prev(point)
        scale = 1 / (h_prev * t * t)
        pole = [[pm * pn * scale, -pn * pn * scale], [pm * pm * scale, -pm * pn * scale]]
        poles[point] = _entrywise(lambda c: _finish(c, var, at), pole)
    log_rate = _finish(_d(h_prev, var) / h_prev, var, at)
    h_inf = _diag(log_rate * 0, log_rate)
    return SchlesingerData(family, n, var, W, M, M_rate, poles, h_inf, _residues(family, n, M))


def _product(points: Sequence[Fraction]) -> UniPoly:
    out = UniPoly([1])
    for a in points:
        out = out * UniPoly([-a, 1])
    return out


@dataclass
class SchlesingerResidual:
    """W P^2 (dA/dt - dH/dx - [H, A]) with P the product of the H pole factors."""

    family: Family
    n: int
    var: str
    residual: Matrix

    @property
    def ok(self) -> bool:
        return mat_is_zero(self.residual)

    def first_failure(self) -> Optional[str]:
        for i in range(2):
            for j in range(2):
                if self.residual[i][j]:
                    return f"entry ({i + 1},{j + 1}) of the {self.var}-flow: {self.residual[i][j]}"
        return None


def schlesinger_residual(family: Family, n: int, at: Point = None,
                         var: Optional[str] = None) -> SchlesingerResidual:
    """Cleared Schlesinger residual; the zero matrix when the flows commute.

    With P = prod (x - a) over the poles of H and P_a = P / (x - a):
    W P^2 (dA/dt - dH/dx - [H, A]) = dM/dt P^2 + W sum H_a P_a^2 - P [H P, M].
    """
    data = schlesinger_matrices(family, n, at, var)
    points = list(data.poles)
    P = _product(points)
    HP = mat_scale(data.h_infinity, P)
    pole_sum = _entrywise(lambda c: c * 0 * P, data.h_infinity)
    for a, Ha in data.poles.items():
        Pa = _product([b for b in points if b != a])
        HP = mat_add(HP, mat_scale(Ha, Pa))
        pole_sum = mat_add(pole_sum, mat_scale(Ha, Pa * Pa))
    res = mat_add(mat_scale(data.numerator_rate, P * P), mat_scale(pole_sum, data.W))
    res = mat_sub(res, mat_scale(commutator(HP, data.numerator), P))
    return SchlesingerResidual(family, n, data.var, res)


def schlesinger_residuals(family: Family, n: int, at: Point = None) -> List[SchlesingerResidual]:
    """One residual per deformation variable."""
    return [schlesinger_residual(family, n, at, v) for v in family.variables]


def infinity_block_check(family: Family, n: int, at: Point = None,
                         var: Optional[str] = None) -> List[Check]:
    """The regular part of H built from p, q and their derivatives is the constant H_infinity.

    H = dZ/dt Z^{-1} is written through p_n, p_{n-1}, the numerator
    polynomials q_n, q_{n-1} and their derivatives, plus the terms from the
    moving mass weight, S(x) / (h_{n-1} t^2 (x - a)).  Removing the pole
    S(a) / (x - a) must leave a matrix that does not depend on x.
    """
    var = var or family.variables[0]
    _check_var(family, var)
    at = normalize_point(family, at) or None
    o = oracle(family, _others(at, var))
    p, pm = o.polynomial(n), o.polynomial(n - 1)
    q, qm = o.numerator_polynomial(n), o.numerator_polynomial(n - 1)

    def rate(poly):
        return _poly_map(poly, lambda c: _d(c, var))

    dp, dpm, dq, dqm = rate(p), rate(pm), rate(q), rate(qm)
    h = o.h(n - 1)
    t = _line_var(family, var, at)
    regular = [[pm * dq - dp * qm, dp * q - p * dq], [pm * dqm - dpm * qm, dpm * q - p * dqm]]
    S = [[pm * p, -p * p], [pm * pm, -pm * p]]
    for point, weight_var in _weight_variables(family).items():
        if weight_var != var:
            continue
        S_at = mat_at(S, point)
        shift = UniPoly([-point, 1])
        reduced = _entrywise(lambda e, c: exact_divide(e - c, shift), S, S_at)
        regular = mat_add(regular, mat_scale(reduced, 1 / (t * t)))
    regular = _entrywise(lambda e: _poly_map(e, lambda c: _finish(c / h, var, at)), regular)
    expected = schlesinger_matrices(family, n, at, var).h_infinity
    return [(f"regular part of H entry ({i + 1},{j + 1})", regular[i][j], UniPoly([expected[i][j]]))
            for i in range(2) for j in range(2)]


def numerator_wronskian(family: Family, n: int, at: Point = None):
    """(p_n q_{n-1} - p_{n-1} q_n) / h_{n-1}, a constant polynomial in x."""
    o = oracle(family, normalize_point(family, at) or None)
    w = o.polynomial(n) * o.numerator_polynomial(n - 1) - o.polynomial(n - 1) * o.numerator_polynomial(n)
    return w * (1 / o.h(n - 1))


# Sign observed at n = 1 (q_0 = 0, q_1 = mu_0 = h_0) and asserted for every n.
WRONSKIAN_SIGN = -1


def display_checks(family: Family, n: int, at: Point = None) -> List[Check]:
    """The explicit forms of the residue matrices and of the pole parts of H."""
    fam = family.classical()
    alpha, beta = fam.alpha, fam.beta
    at = normalize_point(family, at) or None
    checks: List[Check] = []
    data = {v: schlesinger_matrices(family, n, at, v) for v in family.variables}
    first = data[family.variables[0]]
    res = first.residues
    a = _finish(_restrict(recurrence_from_closed_form(fam, n)[0], family.variables[0], at),
                family.variables[0], at)

    def close(label, lhs, rhs):
        for i in range(2):
            for j in range(2):
                checks.append((f"{label} ({i + 1},{j + 1})", lhs[i][j], rhs[i][j]))

    def value(f, var):
        return _finish(_restrict(f, var, at), var, at)

    if fam.kind is Kind.KRALL_LAGUERRE:
        t = _var_value(fam, "t", at)
        close("A_inf", res["Ainf"], _diag(Fraction(0), Fraction(1)))
        close("A1", res["A1"], [[Fraction(n), a], [Fraction(-1), -n - alpha]])
        close("pole of H at 0", first.poles[Fraction(0)], mat_scale(res["A0"], 1 / ((alpha + 1) * t)))
        return checks
    if fam.kind is Kind.KRALL_JACOBI:
        t = _var_value(fam, "t", at)
        aux = auxiliaries(fam, n)
        gu, gv = value(aux.gu, "t"), value(aux.gv, "t")
        y, ym = value(tau_data(fam, n).y, "t"), value(tau_data(fam, n - 1).y, "t")
        g, gm = fam.gamma(n), fam.gamma(n - 1)
        shift = _diag((g - 1 - alpha - beta) / 2, -(g - 1 + alpha + beta) / 2)
        close("A2", res["A2"], mat_add(mat_scale(res["A1"], -1), shift))
        close("A1", res["A1"], [[-(gu + gv + beta) / 2, -g * a * (y - 1)],
                                [gm * (ym - 1), (gu + gv - beta) / 2]])
        close("pole of H at 0", first.poles[Fraction(0)], mat_scale(res["A0"], 1 / ((beta + 1) * t)))
        return checks
    if fam.kind is Kind.KOORNWINDER:
        t1 = _var_value(fam, "t1", at)
        t2 = _var_value(fam, "t2", at)
        close("pole of H at -1", data["t1"].poles[Fraction(-1)],
              mat_scale(res["A1"], 1 / (t1 * (beta + 1))))
        close("pole of H at +1", data["t2"].poles[Fraction(1)],
              mat_scale(res["A2"], 1 / (t2 * (alpha + 1))))
        return checks
    t = _var_value(fam, "t", at)
    close("pole of H at -1", first.poles[Fraction(-1)], mat_scale(res["A1"], 1 / (t * (alpha + 1))))
    close("pole of H at +1", first.poles[Fraction(1)], mat_scale(res["A2"], 1 / (t * (alpha + 1))))
    return checks


# -- scalar deformation equations ------------------------------------------------------

def _line_quantities(family: Family, n: int, var: str, at: Point) -> Dict[str, object]:
    """Closed-form quantities at n and n - 1 restricted to the line, plus the oracle h_{n-1}."""
    fam = family.classical()
    cur, prev = tau_data(fam, n), tau_data(fam, n - 1)
    aux = auxiliaries(fam, n)
    a, b = recurrence_from_closed_form(fam, n)
    out = {"y": cur.y, "ym": prev.y, "a": a, "b": b}
    if fam.kind is Kind.KRALL_LAGUERRE:
        out["u"] = aux.u
    else:
        out.update(gu=aux.gu, gv=aux.gv)
    if fam.kind is Kind.KOORNWINDER:
        nxt = auxiliaries(fam, n + 1)
        out.update(z=cur.z, zm=prev.z, gw=aux.gw, gv_next=nxt.gv, gw_next=nxt.gw)
    out = {k: _restrict(v, var, at) for k, v in out.items()}
    out["h"] = oracle(family, _others(at, var)).h(n - 1)
    return out


def _equations(fam: Family, n: int, var: str, q: Dict[str, object],
               dq: Dict[str, object], t) -> List[Check]:
    alpha, beta = fam.alpha, fam.beta
    y, ym, a, h = q["y"], q["ym"], q["a"], q["h"]
    if fam.kind is Kind.KRALL_LAGUERRE:
        c = (alpha + 1) * t
        u = q["u"]
        return [
            ("h_{n-1}", c * dq["h"], -h * ym),
            ("a_n", c * dq["a"], a * (ym - y)),
            ("u_n through a_n", c * dq["u"], -u + a * (y - ym)),
            ("y_n", c * dq["y"], y * y - (2 * n + alpha + 1) * y - 2 * u),
            ("u_n through y_n", c * dq["u"], -u * (2 * n + alpha + 1 + 2 * u / y)),
            ("y_{n-1}", c * dq["ym"], -ym * ym + (2 * n + alpha - 1) * ym + 2 * u),
        ]
    g, gm = fam.gamma(n), fam.gamma(n - 1)
    gu, gv = q["gu"], q["gv"]
    if fam.kind is Kind.KRALL_JACOBI:
        c = (beta + 1) * t
        return [
            ("v_n", c * dq["gv"], gu),
            ("u_n", c * dq["gu"], -gu + 2 * gm * g * a * (ym - y)),
            ("h_{n-1}", c * dq["h"], (2 - g) * h * ym),
            ("y_{n-1}", c * dq["ym"], -(gu + gv * ym) + (2 - g) * ym * ym - ym),
            ("a_n", c * dq["a"], a * (g * (ym - y) - 2 * ym)),
            ("y_n", c * dq["y"], gu + gv * y + g * y * y - y),
        ]
    z, zm, gw = q["z"], q["zm"], q["gw"]
    P = gm * g * a
    cross = ym * z - zm * y
    C = z * gv - y * gw
    Cm = zm * gv - ym * gw
    if var == "t1":
        c = (beta + 1) * t
        return [
            ("u_n", c * dq["gu"], -gw / 4),
            ("v_n", c * dq["gv"], -P * cross / 4),
            ("v_n through y_n, z_n", c * dq["gv"], (y * y * gw * gw - z * z * gv * gv) / (16 * y * z)),
            ("w_n", c * dq["gw"], -gw + P * (z - zm) - P * cross / 4),
            ("h_{n-1}", c * dq["h"], -(g - 2) * h * zm / 4),
            ("y_{n-1}", c * dq["ym"], -(g - 2) * ym * zm / 4 + Cm / 8),
            ("z_{n-1}", c * dq["zm"],
             -zm * ((g - 2) * zm - 2 * g + 6) / 4 - zm * gu / 2 + gw / 2 + Cm / 8),
            ("y_n", c * dq["y"], g * y * z / 4 - C / 8),
            ("z_n", c * dq["z"], z * (g * z - 2 * g - 2) / 4 + z * gu / 2 - gw / 2 - C / 8),
            ("a_n", c * dq["a"], -a * (g * (z - zm) + 2 * zm) / 4),
            ("b_n", 8 * c * dq["b"], gw - q["gw_next"]),
        ]
    c = (alpha + 1) * t
    return [
        ("u_n", c * dq["gu"], -gv / 4),
        ("v_n", c * dq["gv"], -gv + P * (ym - y) - P * cross / 4),
        ("w_n", c * dq["gw"], -P * cross / 4),
        ("h_{n-1}", c * dq["h"], -(g - 2) * h * ym / 4),
        ("y_{n-1}", c * dq["ym"],
         -ym * ((g - 2) * ym - 2 * g + 6) / 4 + ym * gu / 2 - gv / 2 + Cm / 8),
        ("z_{n-1}", c * dq["zm"], -(g - 2) * ym * zm / 4 + Cm / 8),
        ("y_n", c * dq["y"], y * (g * y - 2 * g - 2) / 4 - y * gu / 2 + gv / 2 - C / 8),
        ("z_n", c * dq["z"], g * y * z / 4 - C / 8),
        ("a_n", c * dq["a"], -a * (g * (y - ym) + 2 * ym) / 4),
        ("b_n", 8 * c * dq["b"], gv - q["gv_next"]),
    ]


def scalar_equations(family: Family, n: int, at: Point = None,
                     var: Optional[str] = None) -> List[Check]:
    """(label, lhs, rhs) for the first-order equations in ``var`` implied by the matrix system.

    Not defined for the Gegenbauer case, which is covered by its matrix
    residual and by the reduction identities of :func:`painleve_residuals`.
    """
    if n < 1:
        raise ValueError("the deformation equations need n >= 1")
    if family.kind is Kind.GEGENBAUER:
        raise ValueError("scalar equations are stated for the three general families")
    var = var or family.variables[0]
    _check_var(family, var)
    at = normalize_point(family, at) or None
    q = _line_quantities(family, n, var, at)
    dq = {k: _d(v, var) for k, v in q.items()}
    t = _line_var(family, var, at)
    checks = _equations(family.classical(), n, var, q, dq, t)
    return [(f"{label} [{var}]", _finish(l, var, at), _finish(r, var, at)) for label, l, r in checks]


# -- Painleve equations ------------------------------------------------------------

@dataclass
class PainleveReport:
    family: Family
    n: int
    equation: str
    parameters: Dict[str, Fraction]
    residual: object

    @property
    def ok(self) -> bool:
        return not self.residual


def _p3_residual(q: RatFun, a, b, c, d) -> RatFun:
    t = RatFun.var("t")
    q1 = q.derivative("t")
    q2 = q1.derivative("t")
    rhs = q1 * q1 / q - q1 / t + (a * q * q + b) / t + c * q ** 3
    if d:
        rhs = rhs + d / q
    return q2 - rhs


def _p5_residual(q: RatFun, a, b, c, d) -> RatFun:
    t = RatFun.var("t")
    q1 = q.derivative("t")
    q2 = q1.derivative("t")
    rhs = ((1 / (2 * q) + 1 / (q - 1)) * q1 * q1 - q1 / t
           + (q - 1) ** 2 / (t * t) * (a * q + b / q))
    if c:
        rhs = rhs + c * q / t
    if d:
        rhs = rhs + d * q * (q + 1) / (q - 1)
    return q2 - rhs


def painleve_parameters(family: Family, n: int) -> Dict[str, Fraction]:
    """(a, b, c, d) of the Painleve equation solved by the closed form at index n."""
    alpha, beta = family.alpha, family.beta
    zero = Fraction(0)
    if family.kind is Kind.KRALL_LAGUERRE:
        return {"a": -(2 * n + 1 + alpha) / (alpha + 1) ** 2, "b": zero,
                "c": 1 / (alpha + 1) ** 2, "d": zero}
    g = family.gamma(n)
    if family.kind is Kind.KRALL_JACOBI:
        return {"a": g * g / (2 * (beta + 1) ** 2), "b": -alpha ** 2 / (2 * (beta + 1) ** 2),
                "c": zero, "d": zero}
    if family.kind is Kind.GEGENBAUER:
        return {"a": g * g / (8 * (alpha + 1) ** 2), "b": -1 / (8 * (alpha + 1) ** 2),
                "c": zero, "d": zero}
    raise ValueError("the Koornwinder family solves a system in two variables, not one Painleve equation")


def painleve_residuals(family: Family, n: int) -> List[PainleveReport]:
    """Every single-variable Painleve-type equation the closed form must satisfy."""
    fam = family.classical()
    alpha, beta = fam.alpha, fam.beta
    t = RatFun.var("t")
    params = painleve_parameters(fam, n)
    out: List[PainleveReport] = []
    if fam.kind is Kind.KRALL_LAGUERRE:
        y = y_krall_laguerre(n, alpha)
        y1 = y.derivative("t")
        y2 = y1.derivative("t")
        k = (alpha + 1) ** 2
        rhs = y1 * y1 / y - y1 / t - (2 * n + alpha + 1) * y * y / (t * t * k) + y ** 3 / (t * t * k)
        out.append(PainleveReport(fam, n, "second-order equation for y_n", {}, y2 - rhs))
        out.append(PainleveReport(fam, n, "Painleve III for y_n / t", params,
                                  _p3_residual(y / t, **params)))
        return out
    if fam.kind is Kind.KRALL_JACOBI:
        g = fam.gamma(n)
        y = y_krall_jacobi(n, alpha, beta)
        y1 = y.derivative("t")
        y2 = y1.derivative("t")
        rhs = ((1 / y + 1 / (2 * (y - 1))) * y1 * y1 - y1 / t
               + y * y / (2 * t * t * (beta + 1) ** 2) * (g * g * (y - 1) - alpha ** 2 / (y - 1)))
        out.append(PainleveReport(fam, n, "second-order equation for y_n", {}, y2 - rhs))
        out.append(PainleveReport(fam, n, "Painleve V for 1 - y_n", params,
                                  _p5_residual(1 - y, **params)))
        return out
    if fam.kind is Kind.GEGENBAUER:
        x = x_gegenbauer(n, alpha)
        out.append(PainleveReport(fam, n, "Painleve V for 1 - x_n", params,
                                  _p5_residual(1 - x, **params)))
        for label, lhs, rhs in gegenbauer_reduction(fam, n):
            out.append(PainleveReport(fam, n, label, {}, lhs - rhs))
        return out
    raise ValueError("use pde_system_residuals for the Koornwinder family")


def gegenbauer_reduction(family: Family, n: int) -> List[Check]:
    """Identities tying x_n to the Koornwinder y_n, z_n on the diagonal t1 = t2 = t."""
    alpha = family.alpha
    y, z = yz_koornwinder(n, alpha, alpha)
    x = x_gegenbauer(n, alpha)
    t = RatFun.var("t")
    xd = x.derivative("t")
    y1 = y.derivative("t1").diagonal("t")
    y2 = y.derivative("t2").diagonal("t")
    z1 = z.derivative("t1").diagonal("t")
    c = 2 * (alpha + 1) * t
    return [
        ("x_n is y_n on the diagonal", x, y.diagonal("t")),
        ("x_n is z_n on the diagonal", x, z.diagonal("t")),
        ("t2-rate of y_n equals t1-rate of z_n", y2, z1),
        ("t1-rate of y_n through x_n", y1, x / (2 * (x - 1)) * (xd + x / c)),
        ("t2-rate of y_n through x_n", y2, ((x - 2) * xd - x * x / c) / (2 * (x - 1))),
        ("rate of x_n splits", xd, y1 + y2),
    ]


# -- first integrals ------------------------------------------------------------------

@dataclass
class IntegralReport:
    family: Family
    n: int
    name: str
    value: object
    expected: Fraction
    stationary: bool

    @property
    def ok(self) -> bool:
        return self.stationary and self.value == self.expected


def _stationary(value, variables: Sequence[str]) -> bool:
    if not isinstance(value, RatFun):
        return True
    return all(not value.derivative(v) for v in variables if v in value.vars)


def _report(family, n, name, value, expected) -> IntegralReport:
    variables = value.vars if isinstance(value, RatFun) else ()
    return IntegralReport(family, n, name, value, Fraction(expected), _stationary(value, variables))


def first_integrals(family: Family, n: int, at: Point = None) -> List[IntegralReport]:
    """Each first integral evaluated on the closed-form solution.

    One-variable families are handled symbolically in t.  For Koornwinder,
    ``at`` may fix one of (t1, t2) so the check runs on a line.
    """
    fam = family.classical()
    alpha, beta = fam.alpha, fam.beta
    t = RatFun.var("t")
    if fam.kind is Kind.KRALL_LAGUERRE:
        y = y_krall_laguerre(n, alpha)
        ty = t * y.derivative("t")
        k = (alpha + 1) ** 2
        main = ty * ty / (y * y) - y * y / k + 2 * (2 * n + 1 + alpha) * y / k
        p = painleve_parameters(fam, n)
        q = y / t
        tq = t * q.derivative("t") / q
        generic = tq * tq + 2 * tq - 2 * p["a"] * t * q - p["c"] * t * t * q * q
        return [_report(fam, n, "integral of the y_n equation", main, 1),
                _report(fam, n, "integral of Painleve III", generic, 0)]
    if fam.kind is Kind.KRALL_JACOBI:
        g = fam.gamma(n)
        y = y_krall_jacobi(n, alpha, beta)
        ty = t * y.derivative("t")
        k = (beta + 1) ** 2
        main = ty * ty / ((1 - y) * y * y) - alpha ** 2 / (k * (1 - y)) + g * g * y / k
        expected = 1 - alpha ** 2 / k
        return [_report(fam, n, "integral of the y_n equation", main, expected),
                _report(fam, n, "integral of Painleve V", _p5_integral(fam, n, 1 - y),
                        (expected - g * g / k) / 2)]
    if fam.kind is Kind.GEGENBAUER:
        g = fam.gamma(n)
        x = x_gegenbauer(n, alpha)
        tx = t * x.derivative("t") / x
        k = 4 * (alpha + 1) ** 2
        main = tx * tx / (1 - x) - 1 / (k * (1 - x)) + (g * g * x + 1) / k
        return [_report(fam, n, "integral of the x_n equation", main, 1),
                _report(fam, n, "integral of Painleve V", _p5_integral(fam, n, 1 - x),
                        (1 - (g * g + 1) / k) / 2)]
    kd = koornwinder_derivatives(fam, n, at)
    y, z, y1, z1 = kd["y"], kd["z"], kd["y1"], kd["z1"]
    t1 = kd["t1"]
    g = fam.gamma(n)
    r = t1 * (y1 / y - z1 / z)
    s = t1 * y1 / (y * z)
    first = r * r - 4 * z * s * s + g * g * z / (4 * (beta + 1) ** 2)
    lead = (beta + 1) * (4 * s - r) + 1
    second = lead * lead - 4 * (beta + 1) ** 2 * y * s * s + g * g * y / 4
    return [_report(fam, n, "first integral in r_n, s_n", first, 1),
            _report(fam, n, "second integral in r_n, s_n", second, (alpha + 1) ** 2)]


def _p5_integral(family: Family, n: int, q: RatFun) -> RatFun:
    t = RatFun.var("t")
    p = painleve_parameters(family, n)
    tq = t * q.derivative("t") / (q - 1)
    return tq * tq / (2 * q) - p["a"] * q + p["b"] / q


# -- the Koornwinder two-variable system ------------------------------------------------

@lru_cache(maxsize=None)
def _koornwinder_partials(n: int, alpha: Fraction, beta: Fraction) -> Dict[str, RatFun]:
    y, z = yz_koornwinder(n, alpha, beta)
    out = {"y": y, "z": z}
    for name, f in (("y", y), ("z", z)):
        f1, f2 = f.derivative("t1"), f.derivative("t2")
        out[name + "1"], out[name + "2"] = f1, f2
        out[name + "11"] = f1.derivative("t1")
        out[name + "22"] = f2.derivative("t2")
    return out


def koornwinder_derivatives(family: Family, n: int, at: Point = None) -> Dict[str, object]:
    """y_n, z_n and their partials (all symbolic first), restricted by ``at``.

    ``at`` may fix at most one variable so the result stays a function on a line.
    """
    at = normalize_point(family, at) or None
    if at and len(at) > 1:
        raise ValueError("fix at most one of t1, t2; identities are checked on lines")
    parts = _koornwinder_partials(n, family.alpha, family.beta)
    out: Dict[str, object] = {k: specialize(v, at) for k, v in parts.items()}
    out["t1"] = _var_value(family, "t1", at)
    out["t2"] = _var_value(family, "t2", at)
    return out


def pde_system_residuals(family: Family, n: int, at: Point = None) -> List[Tuple[str, object]]:
    """Residuals of the second-order system for (y_n, z_n) and of the r_n, s_n relations."""
    if family.kind is not Kind.KOORNWINDER:
        raise ValueError("the two-variable system belongs to the Koornwinder family")
    alpha, beta = family.alpha, family.beta
    g = family.gamma(n)
    d = koornwinder_derivatives(family, n, at)
    y, z, t1, t2 = d["y"], d["z"], d["t1"], d["t2"]
    y1, y2, z1, z2 = d["y1"], d["y2"], d["z1"], d["z2"]
    B, A = (beta + 1) ** 2, (alpha + 1) ** 2
    out = [
        ("y_n in t1", d["y11"] - (y1 * y1 / (2 * y) - y1 / t1 + y1 * z1 / z
                                   + g * g * y * z * z / (32 * B * t1 * t1))),
        ("z_n in t1", d["z11"] - (z1 * z1 / z - z1 / t1 + y1 * z1 / y
                                   - (z - 4) / (2 * y * y) * y1 * y1
                                   + g * g * (z - 4) * z * z / (32 * B * t1 * t1))),
        ("y_n in t2", d["y22"] - (y2 * y2 / y - y2 / t2 + y2 * z2 / z
                                   - (y - 4) / (2 * z * z) * z2 * z2
                                   + g * g * (y - 4) * y * y / (32 * A * t2 * t2))),
        ("z_n in t2", d["z22"] - (z2 * z2 / (2 * z) - z2 / t2 + y2 * z2 / y
                                   + g * g * y * y * z / (32 * A * t2 * t2))),
        ("mixed first-order relation", (beta + 1) * t1 * y1 - (alpha + 1) * t2 * z2),
        ("second mixed relation", (alpha + 1) * z * t2 * y2 + (beta + 1) * y * t1 * z1
         - ((beta + 1) * (y + z - 4) * t1 * y1 - y * z)),
    ]
    # r_n, s_n and the swapped r_n
    r = t1 * (y1 / y - z1 / z)
    s = t1 * y1 / (y * z)
    r_swapped = t2 * (z2 / z - y2 / y)
    k1, k2 = koornwinder_k(n, alpha, beta)
    free = [v for v in ("t1", "t2") if isinstance(d[v], RatFun)]

    def rate(f, v):
        # only available along a free variable
        return f.derivative(v) if v in free and isinstance(f, RatFun) else None

    r1, r2 = rate(r, "t1"), rate(r, "t2")
    s1, s2 = rate(s, "t1"), rate(s, "t2")
    if r1 is not None:
        out.append(("t1-rate of r_n", t1 * r1 - (-2 * z * s * s + g * g * z / (8 * B))))
        out.append(("t1-rate of s_n", 32 * t1 * B * s1 - (g * g - 16 * B * s * s) * z))
    if r2 is not None:
        out.append(("r_n is free of t2", r2))
        out.append(("t2-rate of s_n",
                    32 * t2 * (alpha + 1) * (beta + 1) * s2 - (g * g - 16 * B * s * s) * y))
    out.append(("r_n closed form", r - (k1 * t1 - n) / (k1 * t1 + n)))
    out.append(("swapped r_n closed form", r_swapped - (k2 * t2 - n) / (k2 * t2 + n)))
    out.append(("s_n closed form", s - ((alpha + 1) * r_swapped / (4 * (beta + 1))
                                        + r / 4 - 1 / (4 * (beta + 1)))))
    return out


# -- expansions at infinity ------------------------------------------------------------------

def koornwinder_ab(n: int, alpha, beta) -> Tuple[Fraction, Fraction]:
    """Leading coefficients of y_n in 1/t2 and of z_n in 1/t1."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    common = pochhammer_ext(alpha + beta + 2, n - 1) / factorial(n)
    a = 4 * (alpha + 1) * pochhammer(alpha + 1, n) * common / pochhammer(beta + 1, n)
    b = 4 * (beta + 1) * pochhammer(beta + 1, n) * common / pochhammer(alpha + 1, n)
    return a, b


def asymptotic_check(family: Family, n: int, order: int = 2) -> List[Check]:
    """(label, computed, expected) for the displayed terms of the expansion at infinity."""
    fam = family.classical()
    alpha, beta = fam.alpha, fam.beta
    if fam.kind is Kind.KRALL_LAGUERRE:
        c = expand_at_infinity(y_krall_laguerre(n, alpha), max(order, 1))
        return [("constant term", c[0], Fraction(0)),
                ("1/t coefficient", c[1], (alpha + 1) * pochhammer(alpha + 1, n) / factorial(n))]
    if fam.kind is Kind.KRALL_JACOBI:
        c = expand_at_infinity(y_krall_jacobi(n, alpha, beta), max(order, 1))
        lead = ((beta + 1) * pochhammer(beta + 1, n) * pochhammer_ext(alpha + beta + 2, n - 1)
                / (factorial(n) * pochhammer(alpha + 1, n)))
        return [("constant term", c[0], Fraction(0)), ("1/t coefficient", c[1], lead)]
    if fam.kind is Kind.GEGENBAUER:
        raise ValueError("no expansion is displayed for the Gegenbauer case")
    y, z = yz_koornwinder(n, alpha, beta)
    ey = expand_bivariate_at_infinity(y, max(order, 2))
    ez = expand_bivariate_at_infinity(z, max(order, 2))
    a, b = koornwinder_ab(n, alpha, beta)
    g = fam.gamma(n)
    mixed = -a * b * (alpha + beta + 1)
    zero = Fraction(0)
    return [
        ("y_n (0,0)", ey[(0, 0)], zero), ("y_n (1,0)", ey[(1, 0)], zero),
        ("y_n (2,0)", ey[(2, 0)], zero),
        ("y_n 1/t2", ey[(0, 1)], a),
        ("y_n 1/t2^2", ey[(0, 2)], a * a * (beta ** 2 - (alpha + 1) ** 2 - g * g) / (8 * (alpha + 1) ** 2)),
        ("y_n 1/(t1 t2)", ey[(1, 1)], mixed / (4 * (beta + 1))),
        ("z_n (0,0)", ez[(0, 0)], zero), ("z_n (0,1)", ez[(0, 1)], zero),
        ("z_n (0,2)", ez[(0, 2)], zero),
        ("z_n 1/t1", ez[(1, 0)], b),
        ("z_n 1/t1^2", ez[(2, 0)], b * b * (alpha ** 2 - (beta + 1) ** 2 - g * g) / (8 * (beta + 1) ** 2)),
        ("z_n 1/(t1 t2)", ez[(1, 1)], mixed / (4 * (alpha + 1))),
    ]
