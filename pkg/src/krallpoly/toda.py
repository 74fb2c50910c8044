"""Toda vector fields and master symmetries on recurrence coefficients.

The fields act on a finite window of (a_n, b_n) with the padding a_0 = 0,
b_{-1} = 0.  A field's value at index n reads indices n - 1 .. n + 1 and,
for V_2, the prefix sum b_0 + ... + b_{n-1}.  The deformation equations
say that suitable combinations of t-derivatives of a_n, b_n equal fixed
linear combinations of these fields.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import RatFun, UniPoly, specialize
from .closed_forms import recurrence_from_closed_form
from .hankel import oracle
from .measures import Family, Kind, Point, normalize_point

Pair = Tuple[object, object]


class WindowError(IndexError):
    """A field at index n needs entries outside the stored window."""


@dataclass(frozen=True)
class JacobiSequence:
    """(a_0..a_N, b_0..b_N) with a_0 = 0; entries are scalars or rational functions."""

    a: Tuple[object, ...]
    b: Tuple[object, ...]

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("a and b windows must have the same length")
        if self.a and self.a[0]:
            raise ValueError("a_0 must vanish")

    @classmethod
    def from_pairs(cls, pairs: Sequence[Pair]) -> "JacobiSequence":
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def top(self) -> int:
        return len(self.a) - 1

    def _zero(self):
        return self.b[0] * 0 if self.b else Fraction(0)

    def an(self, k: int):
        if k <= 0:
            return self._zero()
        if k > self.top:
            raise WindowError(f"a_{k} is outside the window 0..{self.top}")
        return self.a[k]

    def bn(self, k: int):
        if k < 0:
            return self._zero()
        if k > self.top:
            raise WindowError(f"b_{k} is outside the window 0..{self.top}")
        return self.b[k]

    def prefix_b(self, n: int):
        """b_0 + ... + b_{n-1}."""
        acc = self._zero()
        for k in range(n):
            acc = acc + self.bn(k)
        return acc


def toda_fields(seq: JacobiSequence, n: int) -> Dict[str, Pair]:
    """Values of T_1 and T_2 on (a_n, b_n)."""
    a, b = seq.an, seq.bn
    t1 = (a(n) * (b(n) - b(n - 1)), a(n + 1) - a(n))
    t2 = (a(n) * (a(n + 1) - a(n - 1) + b(n) ** 2 - b(n - 1) ** 2),
          a(n + 1) * (b(n + 1) + b(n)) - a(n) * (b(n) + b(n - 1)))
    return {"T1": t1, "T2": t2}


def master_symmetries(seq: JacobiSequence, n: int) -> Dict[str, Pair]:
    """Values of V_{-1}, V_0, V_1, V_2 on (a_n, b_n), exactly as displayed."""
    a, b = seq.an, seq.bn
    zero = seq._zero()
    s = seq.prefix_b(n)
    v_m1 = (zero, zero + 1)
    v0 = (2 * a(n), b(n))
    v1 = (2 * a(n) * (n * b(n) - (n - 2) * b(n - 1)),
          b(n) ** 2 + (2 * n + 1) * a(n + 1) - (2 * n - 3) * a(n))
    v2a = 2 * a(n) * ((3 - n) * (a(n - 1) + b(n - 1) ** 2) + a(n)
                      + n * (a(n + 1) + b(n) ** 2) + (b(n) - b(n - 1)) * s)
    v2b = (b(n) * (b(n) ** 2 - 2 * (n - 2) * a(n) + 2 * (n + 1) * a(n + 1))
           + (2 * n + 1) * a(n + 1) * b(n + 1) + (5 - 2 * n) * a(n) * b(n - 1)
           + 2 * (a(n + 1) - a(n)) * s)
    return {"V-1": v_m1, "V0": v0, "V1": v1, "V2": (v2a, v2b)}


def all_fields(seq: JacobiSequence, n: int) -> Dict[str, Pair]:
    out = toda_fields(seq, n)
    out.update(master_symmetries(seq, n))
    return out


def combine(fields: Dict[str, Pair], weights: Dict[str, object]) -> Pair:
    """sum_k weights[k] * fields[k], componentwise."""
    acc_a = acc_b = None
    for name, w in weights.items():
        fa, fb = fields[name]
        acc_a = fa * w if acc_a is None else acc_a + fa * w
        acc_b = fb * w if acc_b is None else acc_b + fb * w
    return acc_a, acc_b


def deformation_weights(family: Family) -> List[Tuple[str, Dict[str, object], Dict[str, object]]]:
    """(label, derivative operator, field combination) per deformation equation.

    The operator maps a variable name to the coefficient c in c * t dX/dt.
    """
    alpha, beta = family.alpha, family.beta
    if family.kind is Kind.KRALL_LAGUERRE:
        return [("t-flow", {"t": alpha + 1}, {"T1": 1, "V0": -1})]
    if family.kind is Kind.KRALL_JACOBI:
        return [("t-flow", {"t": beta + 1}, {"T1": alpha + beta + 2, "V1": 1, "V0": -1})]
    if family.kind is Kind.KOORNWINDER:
        return [
            ("difference flow", {"t2": 2 * (alpha + 1), "t1": -2 * (beta + 1)},
             {"V-1": 1, "V1": -1, "T1": -(alpha + beta + 2)}),
            ("sum flow", {"t2": 2 * (alpha + 1), "t1": 2 * (beta + 1)},
             {"V0": 1, "V2": -1, "T1": beta - alpha, "T2": -(alpha + beta + 3)}),
        ]
    # the sum flow restricted to the diagonal t1 = t2 = t
    return [("diagonal sum flow", {"t": 2 * (alpha + 1)},
             {"V0": 1, "V2": -1, "T2": -(2 * alpha + 3)})]


def _line(var: str, at: Dict[str, Fraction]) -> Optional[Dict[str, Fraction]]:
    rest = {k: v for k, v in at.items() if k != var}
    return rest or None


def _value(f, at):
    return specialize(f, at) if at else f


def _log_rate(f, var: str, at: Dict[str, Fraction]):
    """var * df/dvar, differentiated on the line through ``at`` and then evaluated."""
    if not isinstance(f, RatFun):
        return Fraction(0)
    if not at:
        return f.derivative(var) * RatFun.var(var)
    g = specialize(f, _line(var, at))
    if not isinstance(g, RatFun):
        return Fraction(0)
    return g.derivative(var).evaluate({var: at[var]}) * at[var]


@dataclass
class TodaCheck:
    label: str
    component: str
    n: int
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def closed_form_sequence(family: Family, top: int, at: Point = None) -> JacobiSequence:
    at = normalize_point(family, at)
    pairs = [recurrence_from_closed_form(family, k) for k in range(top + 1)]
    return JacobiSequence.from_pairs([(_value(a, at), _value(b, at)) for a, b in pairs])


def toda_residual(family: Family, n: int, at: Point = None) -> List[TodaCheck]:
    """Both sides of each deformation equation at index n, for a_n and b_n.

    ``at`` either fixes every deformation variable (derivatives are taken
    along lines through the point) or is omitted (symbolic).
    """
    at = normalize_point(family, at)
    if at and len(at) != len(family.variables):
        raise ValueError("fix all deformation variables or none")
    seq = closed_form_sequence(family, n + 1, at)
    fields = all_fields(seq, n)
    a_n, b_n = recurrence_from_closed_form(family, n)
    out = []
    for label, operator, weights in deformation_weights(family):
        rhs_a, rhs_b = combine(fields, weights)
        lhs_a = sum((c * _log_rate(a_n, v, at) for v, c in operator.items()), Fraction(0))
        lhs_b = sum((c * _log_rate(b_n, v, at) for v, c in operator.items()), Fraction(0))
        out.append(TodaCheck(label, "a", n, lhs_a, rhs_a))
        out.append(TodaCheck(label, "b", n, lhs_b, rhs_b))
    return out


def derivative_routes(family: Family, n: int, at: Point = None) -> List[Tuple[str, object, object]]:
    """t-derivatives of a_n, b_n from the closed forms and from the symbolic oracle."""
    at = normalize_point(family, at)
    a_cf, b_cf = recurrence_from_closed_form(family, n)
    out = []
    for var in family.variables:
        line = _line(var, at)
        o = oracle(family, line)
        for name, closed, ground in (("a", a_cf, o.a(n)), ("b", b_cf, o.b(n))):
            c = specialize(closed, line) if isinstance(closed, RatFun) else Fraction(closed)
            dc = c.derivative(var) if isinstance(c, RatFun) else Fraction(0)
            dg = ground.derivative(var) if isinstance(ground, RatFun) else Fraction(0)
            if at and var in at:
                dc = specialize(dc, {var: at[var]}) if isinstance(dc, RatFun) else dc
                dg = specialize(dg, {var: at[var]}) if isinstance(dg, RatFun) else dg
            out.append((f"d{name}_{n}/d{var}", dc, dg))
    return out
