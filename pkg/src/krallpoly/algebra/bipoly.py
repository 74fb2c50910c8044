"""Sparse polynomials over the rationals in the two deformation variables.

Terms are kept in a dict keyed by ``(deg_t1, deg_t2)``.  The gcd works
recursively: a :class:`BiPoly` is viewed as a polynomial in ``t1`` whose
coefficients are univariate polynomials in ``t2``, and a primitive
pseudo-remainder sequence runs over that ring.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Tuple

from .upoly import UniPoly, upoly_gcd

Exp = Tuple[int, int]
VARS = ("t1", "t2")


class BiPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Exp, object] | None = None):
        clean: Dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[e] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    @classmethod
    def constant(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def gen(cls, var: str) -> "BiPoly":
        return cls({(1, 0): 1} if var == "t1" else {(0, 1): 1})

    # -- properties ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0, 0) in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def degree_in(self, var: str) -> int:
        k = VARS.index(var)
        return max((e[k] for e in self.terms), default=-1)

    @property
    def total_degree(self) -> int:
        return max((e[0] + e[1] for e in self.terms), default=-1)

    def lead_exp(self) -> Exp:
        """Leading exponent under graded-lex order (t1 > t2)."""
        return max(self.terms, key=lambda e: (e[0] + e[1], e[0]))

    def lead(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        return self.terms[self.lead_exp()]

    # -- arithmetic ------------------------------------------------------
    @staticmethod
    def _lift(other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return BiPoly({(0, 0): other})

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return BiPoly({e: c * other for e, c in self.terms.items()})
        out: Dict[Exp, Fraction] = {}
        for (i, j), c in self.terms.items():
            for (k, l), d in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + c * d
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = BiPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c) -> "BiPoly":
        return BiPoly({e: v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, BiPoly):
            return self.terms == other.terms
        return self.is_constant() and self.constant_value() == other

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def exact_div(self, d: "BiPoly") -> "BiPoly":
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        if d.is_zero():
            raise ZeroDivisionError("BiPoly division by zero")
        if d.is_constant():
            return self.scale(1 / d.constant_value())
        le = d.lead_exp()
        lc = d.terms[le]
        rem = dict(self.terms)
        quot: Dict[Exp, Fraction] = {}
        key = lambda e: (e[0] + e[1], e[0])
        while rem:
            e = max(rem, key=key)
            if e[0] < le[0] or e[1] < le[1]:
                raise ArithmeticError("BiPoly division is not exact")
            q = (e[0] - le[0], e[1] - le[1])
            c = rem[e] / lc
            quot[q] = c
            for (i, j), v in d.terms.items():
                k = (i + q[0], j + q[1])
                nv = rem.get(k, 0) - c * v
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return BiPoly(quot)

    # -- calculus, substitution -------------------------------------------
    def derivative(self, var: str) -> "BiPoly":
        k = VARS.index(var)
        out = {}
        for e, c in self.terms.items():
            if e[k]:
                ne = (e[0] - 1, e[1]) if k == 0 else (e[0], e[1] - 1)
                out[ne] = c * e[k]
        return BiPoly(out)

    def evaluate(self, t1, t2):
        acc = Fraction(0)
        for (i, j), c in self.terms.items():
            acc += c * t1**i * t2**j
        return acc

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def diagonal(self, var: str = "t") -> UniPoly:
        """Restrict to t1 = t2 = var."""
        n = self.total_degree
        cs = [Fraction(0)] * (n + 1)
        for (i, j), c in self.terms.items():
            cs[i + j] += c
        return UniPoly(cs, var)

    def partial(self, var: str, value) -> UniPoly:
        """Substitute ``var`` = value; the result is univariate in the other one."""
        k = VARS.index(var)
        other = VARS[1 - k]
        cs: Dict[int, Fraction] = {}
        for e, c in self.terms.items():
            cs[e[1 - k]] = cs.get(e[1 - k], 0) + c * Fraction(value) ** e[k]
        n = max(cs, default=-1)
        return UniPoly([cs.get(i, 0) for i in range(n + 1)], other)

    # -- recursive view, content, gcd ---------------------------------------
    def to_recursive(self) -> list:
        """Coefficients in t1 (ascending) as UniPoly objects in t2."""
        d1 = self.degree_in("t1")
        rows: list = [dict() for _ in range(d1 + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        out = []
        for row in rows:
            n = max(row, default=-1)
            out.append(UniPoly([row.get(j, 0) for j in range(n + 1)], "t2"))
        return out

    @classmethod
    def from_recursive(cls, rows) -> "BiPoly":
        terms = {}
        for i, p in enumerate(rows):
            for j, c in enumerate(p.coeffs):
                if c:
                    terms[(i, j)] = c
        return cls(terms)

    def normalized(self) -> "BiPoly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        lc = self.lead()
        return self if lc == 1 else self.scale(1 / lc)

    def __repr__(self):
        return f"BiPoly({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (e[0] + e[1], e[0]), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(VARS, e) if k
            )
            if mono:
                cs = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                parts.append(f"{cs}{mono}")
            else:
                parts.append(str(c))
        return " + ".join(parts).replace("+ -", "- ")


def _rec_content(rows) -> UniPoly:
    g = UniPoly([], "t2")
    for p in rows:
        g = upoly_gcd(g, p)
        if g.degree == 0:
            return g
    return g


def _rec_primitive(rows):
    c = _rec_content(rows)
    if c.degree <= 0:
        lc = c.lead() if c.coeffs else Fraction(1)
        return [p.scale(1 / lc) for p in rows]
    return [p.divmod(c)[0] for p in rows]


def _rec_prem(a, b):
    """Pseudo-remainder of a by b in Q[t2][t1] (lists of UniPoly, ascending)."""
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] = r[i + shift] - lr * c
        while r and r[-1].is_zero():
            r.pop()
    return r


def bipoly_gcd(a: BiPoly, b: BiPoly) -> BiPoly:
    """gcd in Q[t1, t2], normalized to graded-lex leading coefficient 1."""
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    if a.is_constant() or b.is_constant():
        return BiPoly.constant(1)
    ra, rb = a.to_recursive(), b.to_recursive()
    ca, cb = _rec_content(ra), _rec_content(rb)
    c = upoly_gcd(ca, cb)
    pa, pb = _rec_primitive(ra), _rec_primitive(rb)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        if len(pb) == 1:
            pa = [UniPoly([1], "t2")]
            break
        r = _rec_prem(pa, pb)
        pa, pb = pb, (_rec_primitive(r) if r else [])
    g = BiPoly.from_recursive(pa) * BiPoly.from_recursive([c])
    return g.normalized()
