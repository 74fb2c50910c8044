"""The four Krall families and their exact moment sequences.

Every measure is normalized so that its absolutely continuous part has total
mass 1.  The point masses carry weight 1/t (or 1/t1 at x = -1 and 1/t2 at
x = +1), so every moment is a rational function of the deformation
variables with rational coefficients.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from .algebra import Q, RatFun, UniPoly, pochhammer
from .algebra.bipoly import BiPoly


class Kind(enum.Enum):
    KRALL_LAGUERRE = "krall-laguerre"
    KRALL_JACOBI = "krall-jacobi"
    KOORNWINDER = "koornwinder"
    GEGENBAUER = "gegenbauer"


@dataclass(frozen=True)
class Family:
    """A Krall family with fixed rational (alpha, beta).

    ``moment_shift`` adds fixed rational offsets to selected moments; it only
    exists so that tests can feed a deliberately wrong measure through the
    whole pipeline.
    """

    kind: Kind
    alpha: Fraction
    beta: Optional[Fraction] = None
    moment_shift: Tuple[Tuple[int, Fraction], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "alpha", Q(self.alpha))
        if self.kind is Kind.KRALL_LAGUERRE:
            if self.beta is not None:
                raise ValueError("the Krall-Laguerre family has no beta parameter")
        elif self.kind is Kind.GEGENBAUER:
            if self.beta is not None and Q(self.beta) != self.alpha:
                raise ValueError("the Gegenbauer family needs beta = alpha")
            object.__setattr__(self, "beta", self.alpha)
        else:
            if self.beta is None:
                raise ValueError(f"{self.kind.value} needs a beta parameter")
            object.__setattr__(self, "beta", Q(self.beta))
        if self.alpha <= -1:
            raise ValueError(f"alpha must exceed -1, got {self.alpha}")
        if self.beta is not None and self.beta <= -1:
            raise ValueError(f"beta must exceed -1, got {self.beta}")
        object.__setattr__(self, "moment_shift",
                           tuple((int(k), Q(d)) for k, d in self.moment_shift))

    # -- convenience constructors --------------------------------------------
    @classmethod
    def krall_laguerre(cls, alpha) -> "Family":
        return cls(Kind.KRALL_LAGUERRE, alpha)

    @classmethod
    def krall_jacobi(cls, alpha, beta) -> "Family":
        return cls(Kind.KRALL_JACOBI, alpha, beta)

    @classmethod
    def koornwinder(cls, alpha, beta) -> "Family":
        return cls(Kind.KOORNWINDER, alpha, beta)

    @classmethod
    def gegenbauer(cls, alpha) -> "Family":
        return cls(Kind.GEGENBAUER, alpha)

    @classmethod
    def from_name(cls, name: str, alpha, beta=None) -> "Family":
        kind = Kind(name)
        if kind in (Kind.KRALL_LAGUERRE, Kind.GEGENBAUER):
            return cls(kind, alpha)
        return cls(kind, alpha, Q(0) if beta is None else beta)

    def perturbed(self, k: int, delta) -> "Family":
        return Family(self.kind, self.alpha,
                      None if self.kind is Kind.KRALL_LAGUERRE else self.beta,
                      self.moment_shift + ((k, Q(delta)),))

    # -- structure -------------------------------------------------------------
    @property
    def variables(self) -> Tuple[str, ...]:
        return ("t1", "t2") if self.kind is Kind.KOORNWINDER else ("t",)

    @property
    def mass_points(self) -> Tuple[Fraction, ...]:
        if self.kind in (Kind.KRALL_LAGUERRE, Kind.KRALL_JACOBI):
            return (Fraction(0),)
        return (Fraction(-1), Fraction(1))

    @property
    def gamma0(self) -> Fraction:
        """alpha + beta + 1; the closed forms divide by it at n = 0, 1."""
        if self.kind is Kind.KRALL_LAGUERRE:
            return self.alpha + 1
        return self.alpha + self.beta + 1

    def gamma(self, n: int) -> Fraction:
        """alpha + beta + 2n + 1 (with beta = alpha for Gegenbauer)."""
        return self.alpha + self.beta + 2 * n + 1

    def degenerate_indices(self) -> frozenset:
        """Indices n where the closed forms are singular (alpha + beta + 1 = 0)."""
        if self.kind is not Kind.KRALL_LAGUERRE and self.gamma0 == 0:
            return frozenset({0, 1})
        return frozenset()

    def label(self) -> str:
        if self.kind in (Kind.KRALL_LAGUERRE, Kind.GEGENBAUER):
            return f"{self.kind.value}(alpha={self.alpha})"
        return f"{self.kind.value}(alpha={self.alpha}, beta={self.beta})"

    def classical(self) -> "Family":
        """The same family with the perturbation dropped (jumps are kept)."""
        return Family(self.kind, self.alpha,
                      None if self.kind is Kind.KRALL_LAGUERRE else self.beta)


Point = Optional[Mapping[str, Fraction]]


def normalize_point(family: Family, at: Point) -> Dict[str, Fraction]:
    """Validate a (possibly partial) assignment of the deformation variables."""
    if not at:
        return {}
    out = {}
    for var, value in at.items():
        if var not in family.variables:
            raise ValueError(f"{family.kind.value} has no deformation variable {var!r}")
        v = Q(value)
        if v <= 0:
            raise ValueError(f"{var} must be positive, got {v}")
        out[var] = v
    return out


def classical_moments(family: Family, count: int) -> List[Fraction]:
    """Moments of the absolutely continuous part alone (mass 1)."""
    a, b = family.alpha, family.beta
    if family.kind is Kind.KRALL_LAGUERRE:
        return [pochhammer(a + 1, k) for k in range(count)]
    if family.kind is Kind.KRALL_JACOBI:
        nu = [Fraction(1)]
        for k in range(count - 1):
            nu.append(nu[k] * (b + k + 1) / (a + b + k + 2))
        return nu
    nu = [Fraction(1)]
    for k in range(count - 1):
        prev = nu[k - 1] if k >= 1 else Fraction(0)
        nu.append(((b - a) * nu[k] + k * prev) / (a + b + k + 2))
    return nu


def _inverse(var: str, at: Dict[str, Fraction], bivariate: bool):
    """1/var as a Fraction (fixed) or a RatFun (symbolic)."""
    if var in at:
        return 1 / at[var]
    if bivariate:
        return RatFun(BiPoly.constant(1), BiPoly.gen(var))
    return RatFun(UniPoly([1], var), UniPoly([0, 1], var))


def jump_weights(family: Family, at: Point = None):
    """Weights of the point masses, keyed by location."""
    at = normalize_point(family, at)
    if family.kind is Kind.KOORNWINDER:
        both_free = "t1" not in at and "t2" not in at
        return {Fraction(-1): _inverse("t1", at, both_free),
                Fraction(1): _inverse("t2", at, both_free)}
    inv = _inverse("t", at, False)
    if family.kind is Kind.GEGENBAUER:
        return {Fraction(-1): inv, Fraction(1): inv}
    return {Fraction(0): inv}


def moments(family: Family, count: int, at: Point = None) -> list:
    """mu_0 .. mu_{count-1}.

    Variables fixed in ``at`` are substituted; the rest stay symbolic.  With
    every variable fixed the result is a list of Fractions, otherwise a list
    of RatFun values.
    """
    if count < 1:
        raise ValueError("need at least one moment")
    nu = classical_moments(family, count)
    weights = jump_weights(family, at)
    out = []
    for k in range(count):
        mu = nu[k]
        for x, w in weights.items():
            mu = w * (x ** k) + mu if x ** k else mu
        out.append(mu)
    for k, delta in family.moment_shift:
        if k < count:
            out[k] = out[k] + delta
    return out


def moment_functional(p: UniPoly, mu: list):
    """The linear functional sum_k coeff_k(p) mu_k."""
    if p.degree >= len(mu):
        raise ValueError(f"need {p.degree + 1} moments, have {len(mu)}")
    acc = None
    for k, c in enumerate(p.coeffs):
        if not c:
            continue
        term = mu[k] * c
        acc = term if acc is None else acc + term
    return Fraction(0) if acc is None else acc
