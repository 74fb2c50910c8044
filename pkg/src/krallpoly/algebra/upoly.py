"""Dense univariate polynomials.

A :class:`UniPoly` stores its coefficients in ascending degree.  The
coefficients only need field arithmetic and truthiness (zero test), so the
same class serves for polynomials in ``t`` over the rationals and for
polynomials in ``x`` whose coefficients are rational functions of the
deformation parameters.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, List, Sequence


class DivisibilityFailure(ArithmeticError):
    """Raised by :func:`exact_divide` when the remainder is not zero."""

    def __init__(self, remainder: "UniPoly", divisor: "UniPoly"):
        self.remainder = remainder
        self.divisor = divisor
        super().__init__(f"nonzero remainder {remainder} on division by {divisor}")


def _coerce(c):
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    return c


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [_coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple = tuple(cs)
        self.var = var

    # -- constructors -------------------------------------------------
    @classmethod
    def constant(cls, c, var: str = "x") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def monomial(cls, k: int, c=1, var: str = "x") -> "UniPoly":
        return cls([0] * k + [c], var)

    @classmethod
    def gen(cls, var: str = "x") -> "UniPoly":
        return cls([0, 1], var)

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # -- arithmetic ---------------------------------------------------
    def _lift(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            if other.var != self.var and other.degree > 0 and self.degree > 0:
                raise ValueError(f"variable mismatch: {self.var} vs {other.var}")
            return other
        return UniPoly([other], self.var)

    def _var_with(self, other: "UniPoly") -> str:
        if self.degree > 0 or other.degree <= 0:
            return self.var
        return other.var

    def __add__(self, other):
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return UniPoly(out, self._var_with(o))

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            if not other:
                return UniPoly([], self.var)
            return UniPoly([c * other for c in self.coeffs], self.var)
        o = self._lift(other)
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return UniPoly([], self._var_with(o))
        out = [None] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                term = ca * cb
                k = i + j
                out[k] = term if out[k] is None else out[k] + term
        zero = a[0] - a[0]
        return UniPoly([zero if c is None else c for c in out], self._var_with(o))

    def __rmul__(self, other):
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = UniPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "UniPoly":
        return UniPoly([x * c for x in self.coeffs], self.var)

    def __truediv__(self, c):
        if isinstance(c, UniPoly):
            return exact_divide(self, c)
        return UniPoly([x / c for x in self.coeffs], self.var)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return not other
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash((self.coeffs, self.var))

    def divmod(self, d: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Euclidean division over the coefficient field."""
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dd = d.coeffs
        ld = dd[-1]
        nd = len(dd)
        if len(r) < nd:
            return UniPoly([], self.var), self
        q = [None] * (len(r) - nd + 1)
        for k in range(len(r) - nd, -1, -1):
            c = r[k + nd - 1] / ld
            q[k] = c
            if c:
                for i in range(nd):
                    r[k + i] = r[k + i] - c * dd[i]
        return UniPoly(q, self.var), UniPoly(r[: nd - 1], self.var)

    def __floordiv__(self, d):
        return self.divmod(d)[0]

    def __mod__(self, d):
        return self.divmod(d)[1]

    # -- calculus and evaluation -------------------------------------
    def derivative(self) -> "UniPoly":
        return UniPoly([c * k for k, c in enumerate(self.coeffs) if k], self.var)

    def map_coeffs(self, fn) -> "UniPoly":
        return UniPoly([fn(c) for c in self.coeffs], self.var)

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shift(self, c) -> "UniPoly":
        """Return p(var + c), by repeated synthetic division."""
        cs = list(self.coeffs)
        n = len(cs)
        for i in range(n):
            for k in range(n - 2, i - 1, -1):
                cs[k] = cs[k] + c * cs[k + 1]
        return UniPoly(cs, self.var)

    def reflect(self) -> "UniPoly":
        """Return p(-var)."""
        return UniPoly([c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)], self.var)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.coeffs[-1])

    # -- display --------------------------------------------------------
    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r}, var={self.var!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            cs = str(c)
            if isinstance(c, Fraction):
                if mono and c == 1:
                    cs = ""
                elif mono and c == -1:
                    cs = "-"
            else:
                cs = f"({cs})"
            if mono and cs not in ("", "-"):
                parts.append(f"{cs}*{mono}")
            else:
                parts.append(f"{cs}{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def exact_divide(p: UniPoly, d: UniPoly) -> UniPoly:
    """Return q with p = q*d, or raise :class:`DivisibilityFailure`."""
    q, r = p.divmod(d)
    if not r.is_zero():
        raise DivisibilityFailure(r, d)
    return q


def poly_derivative(p: UniPoly) -> UniPoly:
    return p.derivative()


def _integer_primitive(cs: List[int]) -> List[int]:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
        if g == 1:
            break
    if cs[-1] < 0:
        g = -g
    return [c // g for c in cs]


def _to_integer_primitive(p: UniPoly) -> List[int]:
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return _integer_primitive([int(c * den) for c in p.coeffs])


def _integer_prem(a: List[int], b: List[int]) -> List[int]:
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while r and len(r) - 1 >= db:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        while r and r[-1] == 0:
            r.pop()
    return r


def _rational_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    # primitive remainder sequence over Z; Euclid over Q swells the coefficients
    pa, pb = _to_integer_primitive(a), _to_integer_primitive(b)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        if len(pb) == 1:
            return UniPoly([1], a.var)
        r = _integer_prem(pa, pb)
        pa, pb = pb, (_integer_primitive(r) if r else [])
    return UniPoly([Fraction(c, pa[-1]) for c in pa], a.var)


def upoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over the coefficient field; gcd(0, 0) = 0."""
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if all(isinstance(c, (int, Fraction)) for c in a.coeffs + b.coeffs):
        return _rational_gcd(a, b)
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic()


def from_roots(roots: Sequence, var: str = "x") -> UniPoly:
    out = UniPoly([1], var)
    for r in roots:
        out = out * UniPoly([-r, 1], var)
    return out
