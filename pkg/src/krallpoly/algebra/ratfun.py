"""Reduced rational functions in ``t`` or in ``(t1, t2)`` over the rationals.

Both numerator and denominator live in the same polynomial ring: univariate
(:class:`UniPoly` with Fraction coefficients) or bivariate (:class:`BiPoly`).
Every value is kept in lowest terms with a canonical denominator (monic in
one variable, unit graded-lex leading coefficient in two), so structural
equality is mathematical equality.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Tuple

from .bipoly import BiPoly, bipoly_gcd
from .upoly import UniPoly, exact_divide, upoly_gcd


def _ring_gcd(a, b):
    if isinstance(a, BiPoly):
        return bipoly_gcd(a, b)
    return upoly_gcd(a, b)


def _ring_div(a, b):
    if isinstance(a, BiPoly):
        return a.exact_div(b)
    return exact_divide(a, b)


def _is_one(p) -> bool:
    return p.is_constant() and p == 1


class RatFun:
    """num/den in lowest terms.  ``vars`` is ``("t",)`` or ``("t1", "t2")``."""

    __slots__ = ("num", "den", "vars")

    def __init__(self, num, den=None, *, reduce: bool = True):
        if isinstance(num, BiPoly) or isinstance(den, BiPoly):
            vars_ = ("t1", "t2")
            num = num if isinstance(num, BiPoly) else BiPoly.constant(num)
            den = BiPoly.constant(1) if den is None else (
                den if isinstance(den, BiPoly) else BiPoly.constant(den))
        else:
            var = num.var if isinstance(num, UniPoly) and num.degree > 0 else (
                den.var if isinstance(den, UniPoly) and den.degree > 0 else
                (num.var if isinstance(num, UniPoly) else "t"))
            vars_ = (var,)
            num = num if isinstance(num, UniPoly) else UniPoly([num], var)
            den = UniPoly([1], var) if den is None else (
                den if isinstance(den, UniPoly) else UniPoly([den], var))
            num.var = den.var = var
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        self.vars: Tuple[str, ...] = vars_
        if reduce:
            num, den = self._canonical(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def _canonical(num, den):
        if num.is_zero():
            return num, den * 0 + 1
        if not den.is_constant():
            g = _ring_gcd(num, den)
            if not g.is_constant():
                num = _ring_div(num, g)
                den = _ring_div(den, g)
        lc = den.lead()
        if lc != 1:
            inv = 1 / lc
            num = num.scale(inv)
            den = den.scale(inv)
        return num, den

    @classmethod
    def _make(cls, num, den, vars_) -> "RatFun":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj.vars = num, den, vars_
        return obj

    # -- constructors -------------------------------------------------------
    @classmethod
    def var(cls, name: str) -> "RatFun":
        if name in ("t1", "t2"):
            return cls(BiPoly.gen(name))
        return cls(UniPoly([0, 1], name))

    @classmethod
    def const(cls, c, vars_: Tuple[str, ...] = ("t",)) -> "RatFun":
        if len(vars_) == 2:
            return cls(BiPoly.constant(c))
        return cls(UniPoly([c], vars_[0]))

    @property
    def is_bivariate(self) -> bool:
        return len(self.vars) == 2

    def _lift(self, other) -> "RatFun":
        if isinstance(other, RatFun):
            if other.vars != self.vars:
                if other.is_constant():
                    return RatFun.const(other.constant_value(), self.vars)
                if self.is_constant():
                    return other
                raise ValueError(f"mixing rational functions in {self.vars} and {other.vars}")
            return other
        return RatFun.const(other, self.vars)

    # -- queries ------------------------------------------------------------
    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if isinstance(self.num, BiPoly):
            return self.num.constant_value() / self.den.constant_value()
        return self.num.coeff(0) / self.den.coeff(0)

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, UniPoly):
            return NotImplemented
        if not isinstance(other, RatFun):
            if not other:
                return self
            return RatFun._make(self.num + self.den * other, self.den, self.vars)
        o = self._lift(other)
        if o is not other or o.vars != self.vars:
            return self + o
        a, b, c, d = self.num, self.den, o.num, o.den
        if a.is_zero():
            return o
        if c.is_zero():
            return self
        if b == d:
            return RatFun(a + c, b)
        if b.is_constant() or d.is_constant():
            return RatFun._make(*self._canonical_scale(a * d + c * b, b * d), self.vars)
        g = _ring_gcd(b, d)
        if g.is_constant():
            return RatFun._make(*self._canonical_scale(a * d + c * b, b * d), self.vars)
        b1 = _ring_div(b, g)
        d1 = _ring_div(d, g)
        t = a * d1 + c * b1
        if t.is_zero():
            return RatFun.const(0, self.vars)
        g2 = _ring_gcd(t, g)
        if not g2.is_constant():
            t = _ring_div(t, g2)
            d = _ring_div(d, g2)
        return RatFun._make(*self._canonical_scale(t, b1 * d), self.vars)

    @staticmethod
    def _canonical_scale(num, den):
        if num.is_zero():
            return num, den * 0 + 1
        lc = den.lead()
        if lc != 1:
            inv = 1 / lc
            return num.scale(inv), den.scale(inv)
        return num, den

    __radd__ = __add__

    def __neg__(self):
        return RatFun._make(-self.num, self.den, self.vars)

    def __sub__(self, other):
        if isinstance(other, UniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            return NotImplemented
        if not isinstance(other, RatFun):
            if not other:
                return RatFun.const(0, self.vars)
            return RatFun._make(self.num.scale(other), self.den, self.vars)
        o = self._lift(other)
        if o.vars != self.vars:
            return o * self
        a, b, c, d = self.num, self.den, o.num, o.den
        if a.is_zero() or c.is_zero():
            return RatFun.const(0, self.vars)
        if not d.is_constant() and not a.is_constant():
            g1 = _ring_gcd(a, d)
            if not g1.is_constant():
                a = _ring_div(a, g1)
                d = _ring_div(d, g1)
        if not b.is_constant() and not c.is_constant():
            g2 = _ring_gcd(c, b)
            if not g2.is_constant():
                c = _ring_div(c, g2)
                b = _ring_div(b, g2)
        return RatFun._make(*self._canonical_scale(a * c, b * d), self.vars)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun._make(*self._canonical_scale(self.den, self.num), self.vars)

    def __truediv__(self, other):
        if not isinstance(other, RatFun):
            if not other:
                raise ZeroDivisionError("division by zero")
            return RatFun._make(self.num.scale(1 / Fraction(other)), self.den, self.vars)
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RatFun._make(self.num ** k, self.den ** k, self.vars)

    def __eq__(self, other):
        if isinstance(other, RatFun):
            if other.vars != self.vars:
                return self.is_constant() and other.is_constant() and \
                    self.constant_value() == other.constant_value()
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    # -- calculus, substitution ---------------------------------------------------
    def derivative(self, var: str | None = None) -> "RatFun":
        var = var or self.vars[0]
        if var not in self.vars:
            return RatFun.const(0, self.vars)
        if isinstance(self.num, BiPoly):
            dn, dd = self.num.derivative(var), self.den.derivative(var)
        else:
            dn, dd = self.num.derivative(), self.den.derivative()
        if dd.is_zero():
            return RatFun._make(*self._canonical_scale(dn, self.den), self.vars) if dn else \
                RatFun.const(0, self.vars)
        # (n'd - n d')/d^2; gcd(d, d') lets us cancel before squaring
        g = _ring_gcd(self.den, dd)
        d1 = _ring_div(self.den, g)
        dd1 = _ring_div(dd, g)
        num = dn * d1 - self.num * dd1
        return RatFun(num, d1 * self.den)

    def evaluate(self, point: Mapping[str, Fraction]):
        """Value at a rational point, e.g. ``{"t": 1}`` or ``{"t1": 1, "t2": 2}``."""
        if isinstance(self.num, BiPoly):
            t1, t2 = Fraction(point["t1"]), Fraction(point["t2"])
            den = self.den.evaluate(t1, t2)
            if den == 0:
                raise ZeroDivisionError(f"pole of {self} at {dict(point)}")
            return self.num.evaluate(t1, t2) / den
        v = Fraction(point[self.vars[0]])
        den = self.den(v)
        if den == 0:
            raise ZeroDivisionError(f"pole of {self} at {dict(point)}")
        return self.num(v) / den

    def swap(self) -> "RatFun":
        """Exchange t1 and t2."""
        return RatFun(self.num.swap(), self.den.swap())

    def diagonal(self, var: str = "t") -> "RatFun":
        """Restrict a bivariate function to t1 = t2 = var."""
        return RatFun(self.num.diagonal(var), self.den.diagonal(var))

    def partial(self, var: str, value) -> "RatFun":
        """Fix one of (t1, t2) at a rational value."""
        return RatFun(self.num.partial(var, value), self.den.partial(var, value))

    def __repr__(self):
        return f"RatFun({self.num!s} / {self.den!s})"

    def __str__(self):
        if self.den.is_constant() and self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def ratfun_derivative(f: RatFun, variable: str) -> RatFun:
    return f.derivative(variable)


def T(name: str = "t") -> RatFun:
    """The deformation variable ``name`` as a rational function."""
    return RatFun.var(name)


def specialize(value, point: Mapping[str, Fraction] | None):
    """Fix the variables named in ``point``; the others stay symbolic.

    Scalars pass through as Fractions, fully fixed rational functions become
    Fractions, and a bivariate function with one variable fixed becomes a
    univariate one in the other.
    """
    if not isinstance(value, RatFun):
        return Fraction(value)
    if not point:
        return value
    fixed = [v for v in value.vars if v in point]
    if not fixed:
        return value
    if len(fixed) == len(value.vars):
        return value.evaluate(point)
    var = fixed[0]
    return value.partial(var, Fraction(point[var]))


def specialize_poly(p: UniPoly, point: Mapping[str, Fraction] | None) -> UniPoly:
    """Apply :func:`specialize` to every coefficient of a polynomial in x."""
    return UniPoly([specialize(c, point) for c in p.coeffs], p.var)
