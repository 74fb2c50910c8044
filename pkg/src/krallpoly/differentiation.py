"""Krall-type polynomials as a first-order operator applied to a classical one.

For the Laguerre family with one jump at 0,
p_n = (U_n d/dx + 1) L_n with U_n = (alpha+1)_n / (n! t + n (alpha+2)_{n-1}).
For the Jacobi family on [-1, 1] with jumps 1/t1 at -1 and 1/t2 at +1,
p_n = {[B_n (1-x) - A_n (1+x)] d/dx + c_n} P_n / sigma_n with
A_n = (alpha+1)(k1 t1 + n), B_n = (beta+1)(k2 t2 + n) and
c_n = (alpha+beta+n+1) A_n B_n / ((alpha+1)(beta+1)).
The symmetric Gegenbauer case is the diagonal t1 = t2 = t with beta = alpha.
There is no such formula for the Jacobi family on [0, 1].

The classical monic polynomials are built from the t -> infinity limits of
the closed-form recurrence coefficients, so the only ground-truth inputs
are still the moments.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from .algebra import RatFun, UniPoly, factorial, pochhammer, specialize, specialize_poly
from .closed_forms import (
    DegenerateParameters,
    classical_limit,
    koornwinder_k,
    koornwinder_sigma_tau,
    polynomials_from_recurrence,
    y_krall_laguerre,
    yz_koornwinder,
)
from .hankel import classical_oracle
from .measures import Family, Kind, Point, normalize_point


class NoDifferentiationFormula(ValueError):
    """The family has no first-order operator formula."""


# -- classical polynomials -------------------------------------------------------

@lru_cache(maxsize=None)
def _classical_coefficients(kind: str, n: int, alpha: Fraction, beta: Optional[Fraction]):
    if kind == "laguerre":
        fam = Family.krall_laguerre(alpha)
    elif kind == "jacobi":
        fam = Family.koornwinder(alpha, beta)
    else:
        raise ValueError(f"unknown classical kind {kind!r}; use 'laguerre' or 'jacobi'")
    try:
        return tuple(classical_limit(fam, k) for k in range(n))
    except DegenerateParameters:
        # alpha + beta + 1 = 0: the closed forms are singular at n = 0, 1 but
        # the classical polynomials are not; read them off the jump-free moments
        o = classical_oracle(fam)
        return tuple((o.a(k), o.b(k)) for k in range(n))


def classical_monic(kind: str, n: int, alpha, beta=None) -> UniPoly:
    """Monic Laguerre L_n^alpha or Jacobi P_n^(alpha, beta) on [-1, 1].

    ``kind`` is "laguerre" or "jacobi"; for example the monic Laguerre
    polynomial of degree 1 with alpha = 0 is x - 1.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    alpha = Fraction(alpha)
    if kind == "jacobi":
        beta = Fraction(alpha if beta is None else beta)
    else:
        beta = None
    coeffs = _classical_coefficients(kind, n, alpha, beta)
    return polynomials_from_recurrence(list(coeffs), n)[n]


# -- operators ---------------------------------------------------------------------

@dataclass(frozen=True)
class DiffOperatorData:
    """(lead * d/dx + const) applied to the classical p_n, then divided by ``scale``.

    ``lead`` is a polynomial in x of degree <= 1 whose coefficients may
    depend on the deformation variables.  For the Laguerre case
    ``lead = U_n``, ``const = scale = 1``; for the Jacobi case ``A``, ``B``
    and ``sigma`` are kept alongside.
    """

    family: Family
    n: int
    lead: UniPoly
    const: object
    scale: object
    A: object = None
    B: object = None

    def apply(self, p: UniPoly) -> UniPoly:
        return (self.lead * p.derivative() + p * self.const) * (1 / self.scale)

    def specialize(self, at: Point) -> "DiffOperatorData":
        if not at:
            return self
        sp = (lambda v: None if v is None else specialize(v, at))
        return DiffOperatorData(self.family, self.n, specialize_poly(self.lead, at),
                                sp(self.const), sp(self.scale), sp(self.A), sp(self.B))


def krall_laguerre_u(n: int, alpha) -> RatFun:
    """U_n = (alpha+1)_n / (n! t + n (alpha+2)_{n-1})."""
    alpha = Fraction(alpha)
    t = RatFun.var("t")
    shift = n * pochhammer(alpha + 2, n - 1) if n else 0
    return pochhammer(alpha + 1, n) / (factorial(n) * t + shift)


def krall_laguerre_operator(n: int, alpha) -> DiffOperatorData:
    u = krall_laguerre_u(n, alpha)
    return DiffOperatorData(Family.krall_laguerre(alpha), n, UniPoly([u]), Fraction(1), Fraction(1))


def koornwinder_operator_ab(n: int, alpha, beta) -> Tuple[RatFun, RatFun]:
    """(A_n, B_n) as functions of (t1, t2)."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    k1, k2 = koornwinder_k(n, alpha, beta)
    return ((alpha + 1) * (RatFun.var("t1") * k1 + n),
            (beta + 1) * (RatFun.var("t2") * k2 + n))


def koornwinder_sigma(n: int, alpha, beta) -> RatFun:
    sigma, _ = koornwinder_sigma_tau(n, alpha, beta)
    return RatFun(sigma)


def koornwinder_operator(n: int, alpha, beta) -> DiffOperatorData:
    alpha, beta = Fraction(alpha), Fraction(beta)
    A, B = koornwinder_operator_ab(n, alpha, beta)
    sigma = koornwinder_sigma(n, alpha, beta)
    if sigma == 0:
        raise DegenerateParameters("sigma_n vanishes identically (alpha + beta + 1 = 0)")
    const = (alpha + beta + n + 1) * A * B / ((alpha + 1) * (beta + 1))
    # B (1 - x) - A (1 + x)
    lead = UniPoly([B - A, -(A + B)])
    return DiffOperatorData(Family.koornwinder(alpha, beta), n, lead, const, sigma, A, B)


def monicity_defect(n: int, alpha, beta) -> RatFun:
    """-n (A_n + B_n) + c_n - sigma_n; zero as a function of (t1, t2)."""
    op = koornwinder_operator(n, alpha, beta)
    return -n * (op.A + op.B) + op.const - op.scale


# -- the second parameterization through U_n = A_n / sigma_n, V_n = B_n / sigma_n ---

def koornwinder_uv(n: int, alpha, beta) -> Tuple[RatFun, RatFun]:
    A, B = koornwinder_operator_ab(n, alpha, beta)
    sigma = koornwinder_sigma(n, alpha, beta)
    return A / sigma, B / sigma


def koornwinder_uv_operator(n: int, alpha, beta) -> DiffOperatorData:
    """{[V (1-x) - U (1+x)] d/dx + n (U + V) + 1}, monic by construction."""
    U, V = koornwinder_uv(n, alpha, beta)
    lead = UniPoly([V - U, -(U + V)])
    return DiffOperatorData(Family.koornwinder(alpha, beta), n, lead,
                            n * (U + V) + 1, Fraction(1))


def yz_from_uv(n: int, alpha, beta, U, V) -> Tuple[object, object]:
    """y_n and z_n written through the operator coefficients U, V."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    den = (alpha + beta + 2 * n + 1) * (U + V) + 1
    y = 4 * U * ((alpha + 1) * (1 + n * V) - n * (beta + n) * U) / den
    z = 4 * V * ((beta + 1) * (1 + n * U) - n * (alpha + n) * V) / den
    return y, z


def uv_from_rates(n: int, alpha, beta, r, s) -> Tuple[object, object]:
    """U, V recovered from r_n, s_n; requires n >= 1."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    den = n * (4 * (beta + 1) * s + alpha + beta + 2 * n + 1)
    return ((beta + 1) * (r - 4 * s) + alpha) / den, (beta + 1) * (1 - r) / den


def y_from_u_laguerre(n: int, alpha, U) -> object:
    """y_n = ((alpha+1) U - n U^2) / (U + 1)."""
    return ((Fraction(alpha) + 1) * U - n * U * U) / (U + 1)


def u_from_y_laguerre(n: int, alpha, y, ydot, t) -> object:
    """U_n recovered from y_n and its t-derivative."""
    a1 = Fraction(alpha) + 1
    return -(a1 * (t * ydot + y) + y * y) / (a1 * (t * ydot - y) + y * (y - 2 * n))


@dataclass
class ConsistencyCheck:
    label: str
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def operator_consistency(family: Family, n: int, at: Point = None) -> List[ConsistencyCheck]:
    """Identities tying the operator coefficients to the closed-form y_n (z_n).

    Symbolic when ``at`` is omitted; otherwise fully evaluated, with the
    t-derivatives taken before evaluation.
    """
    at = normalize_point(family, at)
    alpha, beta = family.alpha, family.beta
    out: List[ConsistencyCheck] = []
    if family.kind is Kind.KRALL_LAGUERRE:
        U = krall_laguerre_u(n, alpha)
        if n == 0:
            return out
        y = y_krall_laguerre(n, alpha)
        t = RatFun.var("t")
        out.append(ConsistencyCheck("y_n from U_n", specialize(y_from_u_laguerre(n, alpha, U), at),
                                    specialize(y, at)))
        out.append(ConsistencyCheck("U_n from y_n", specialize(u_from_y_laguerre(n, alpha, y, y.derivative("t"), t), at),
                                    specialize(U, at)))
        return out
    if family.kind is not Kind.KOORNWINDER:
        raise NoDifferentiationFormula(f"no operator identities for {family.kind.value}")
    if n in family.degenerate_indices():
        raise DegenerateParameters("alpha + beta + 1 = 0")
    U, V = koornwinder_uv(n, alpha, beta)
    y, z = yz_koornwinder(n, alpha, beta)
    out.append(ConsistencyCheck("monic leading coefficient", specialize(monicity_defect(n, alpha, beta), at), 0))
    yy, zz = yz_from_uv(n, alpha, beta, U, V)
    out.append(ConsistencyCheck("y_n from U_n, V_n", specialize(yy, at), specialize(y, at)))
    out.append(ConsistencyCheck("z_n from U_n, V_n", specialize(zz, at), specialize(z, at)))
    op = koornwinder_operator(n, alpha, beta)
    out.append(ConsistencyCheck("constant term equals n (U + V) + 1",
                                specialize(op.const / op.scale, at), specialize(n * (U + V) + 1, at)))
    if n >= 1:
        t1 = RatFun.var("t1")
        s = t1 * y.derivative("t1") / (y * z)
        r = z * s - t1 * z.derivative("t1") / z
        u2, v2 = uv_from_rates(n, alpha, beta, r, s)
        out.append(ConsistencyCheck("U_n from r_n, s_n", specialize(u2, at), specialize(U, at)))
        out.append(ConsistencyCheck("V_n from r_n, s_n", specialize(v2, at), specialize(V, at)))
    return out


# -- the route ----------------------------------------------------------------------

def operator_for(family: Family, n: int) -> Tuple[DiffOperatorData, UniPoly]:
    """The operator and the classical polynomial it acts on, symbolic in t."""
    alpha = family.alpha
    if family.kind is Kind.KRALL_LAGUERRE:
        return krall_laguerre_operator(n, alpha), classical_monic("laguerre", n, alpha)
    if family.kind is Kind.KOORNWINDER:
        return koornwinder_operator(n, alpha, family.beta), classical_monic("jacobi", n, alpha, family.beta)
    if family.kind is Kind.GEGENBAUER:
        op = koornwinder_operator(n, alpha, alpha)
        diag = (lambda f: f.diagonal("t") if isinstance(f, RatFun) else f)
        op = DiffOperatorData(family, n, op.lead.map_coeffs(diag), diag(op.const),
                              diag(op.scale), diag(op.A), diag(op.B))
        return op, classical_monic("jacobi", n, alpha, alpha)
    raise NoDifferentiationFormula(f"no differentiation formula for the {family.kind.value} family")


def differentiation_polynomial(family: Family, n: int, at: Point = None) -> UniPoly:
    """p_n from the operator formula; symbolic in the variables not fixed by ``at``."""
    at = normalize_point(family, at)
    op, base = operator_for(family, n)
    return op.specialize(at).apply(base)


def krall_laguerre_via_differentiation(n: int, alpha, t=None) -> UniPoly:
    return differentiation_polynomial(Family.krall_laguerre(alpha), n, None if t is None else {"t": t})


def koornwinder_via_differentiation(n: int, alpha, beta, t1=None, t2=None) -> UniPoly:
    at = {k: v for k, v in (("t1", t1), ("t2", t2)) if v is not None}
    return differentiation_polynomial(Family.koornwinder(alpha, beta), n, at or None)
