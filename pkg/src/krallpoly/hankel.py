"""Ground truth from the moments alone.

The monic orthogonal polynomial p_n solves the Hankel system
sum_j mu_{i+j} c_j = -mu_{i+n} (0 <= i < n).  The system is solved
fraction-free over the polynomial ring once the moment denominators are
cleared, so every intermediate quantity is a minor of the moment matrix.
From p_n and the Hankel determinants we read off h_n, a_n, b_n and the
subleading coefficients c_n, d_n, e_n.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .algebra import RatFun, UniPoly
from .algebra.bipoly import BiPoly
from .algebra.linalg import ring_exact_div
from .algebra.upoly import upoly_gcd
from .algebra.bipoly import bipoly_gcd
from .measures import (
    Family,
    Point,
    classical_moments,
    moment_functional,
    moments,
    normalize_point,
)


class SingularMomentMatrix(ArithmeticError):
    """A leading Hankel minor vanished; the moments do not define p_n."""


@dataclass(frozen=True)
class RecurrenceData:
    n: int
    a: object
    b: object
    h: object
    c: object
    d: object
    e: object


def _zero_like(x):
    return x * 0


def _solve_hankel(m: list, n: int, div) -> Tuple[object, List[object]]:
    """Return (D, [N_0..N_{n-1}]) with D = det(m_{i+j}) and c_j = N_j / D.

    Bareiss forward elimination on the augmented matrix, then fraction-free
    back substitution; all divisions are exact.
    """
    rows = [[m[i + j] for j in range(n)] + [-m[i + n]] for i in range(n)]
    prev = None
    for k in range(n - 1):
        pivot = rows[k][k]
        if not pivot:
            raise SingularMomentMatrix(f"leading minor of order {k + 1} vanishes")
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                v = rows[i][j] * pivot - rows[i][k] * rows[k][j]
                rows[i][j] = v if prev is None else div(v, prev)
            rows[i][k] = _zero_like(pivot)
        prev = pivot
    D = rows[n - 1][n - 1]
    if not D:
        raise SingularMomentMatrix(f"Hankel determinant of order {n} vanishes")
    sol: List[object] = [None] * n
    for i in range(n - 1, -1, -1):
        acc = D * rows[i][n]
        for j in range(i + 1, n):
            acc = acc - rows[i][j] * sol[j]
        sol[i] = div(acc, rows[i][i])
    return D, sol


def _ring_gcd(a, b):
    if isinstance(a, BiPoly):
        return bipoly_gcd(a, b)
    return upoly_gcd(a, b)


class HankelOracle:
    """Moments, Hankel determinants and orthogonal polynomials for one family.

    ``at`` fixes some deformation variables; the rest stay symbolic.  With
    everything fixed the scalars are Fractions, otherwise RatFun values.
    """

    def __init__(self, family: Family, at: Point = None, jumps: bool = True):
        self.family = family
        self.jumps = jumps
        self.at = normalize_point(family, at) if jumps else {}
        self.symbolic = jumps and len(self.at) < len(family.variables)
        self._mu: list = []
        self._ring_m: list = []
        self._L = None
        self._polys: Dict[int, UniPoly] = {}
        self._dets: Dict[int, object] = {-1: Fraction(1)}

    # -- moments ---------------------------------------------------------------
    def moments(self, count: int) -> list:
        if count > len(self._mu):
            if not self.jumps:
                self._mu = classical_moments(self.family, count)
                return self._mu[:count]
            self._mu = moments(self.family, count, self.at)
            if self.symbolic:
                vars_ = self._vars()
                self._mu = [mu if isinstance(mu, RatFun) else RatFun.const(mu, vars_)
                            for mu in self._mu]
                self._clear_denominators()
        return self._mu[:count]

    def _clear_denominators(self):
        L = None
        for mu in self._mu:
            den = mu.den
            if L is None:
                L = den
            elif den != L:
                g = _ring_gcd(L, den)
                L = ring_exact_div(L * den, g)
        self._L = L
        self._ring_m = [ring_exact_div(mu.num * L, mu.den) for mu in self._mu]

    def _to_field(self, p, power: int):
        """Ring element p / L^power as a field element."""
        if not self.symbolic:
            return p
        return RatFun(p, self._L ** power)

    # -- polynomials -----------------------------------------------------------
    def polynomial(self, n: int) -> UniPoly:
        """Monic p_n(x) with coefficients in the field of the deformation variables."""
        if n in self._polys:
            return self._polys[n]
        if n == 0:
            one = Fraction(1) if not self.symbolic else RatFun.const(1, self._vars())
            p = UniPoly([one])
            self._polys[0] = p
            return p
        self.moments(2 * n)
        if self.symbolic:
            D, sol = _solve_hankel(self._ring_m, n, ring_exact_div)
            coeffs = [RatFun(N, D) for N in sol]
            one = RatFun.const(1, self._vars())
            # det of the cleared matrix is L^n times the moment determinant
            self._dets[n - 1] = RatFun(D, self._L ** n)
        else:
            D, sol = _solve_hankel(self._mu, n, lambda a, b: a / b)
            coeffs = [N / D for N in sol]
            one = Fraction(1)
            self._dets[n - 1] = D
        p = UniPoly(coeffs + [one])
        self._polys[n] = p
        return p

    def _vars(self) -> Tuple[str, ...]:
        free = tuple(v for v in self.family.variables if v not in self.at)
        return ("t1", "t2") if len(free) == 2 else free

    def hankel_determinant(self, k: int):
        """Delta_k = det(mu_{i+j})_{0 <= i, j <= k}; Delta_{-1} = 1."""
        if k not in self._dets:
            self.polynomial(k + 1)
        return self._dets[k]

    def h(self, n: int):
        return self.hankel_determinant(n) / self.hankel_determinant(n - 1)

    # -- recurrence ------------------------------------------------------------
    def _sub(self, n: int, k: int):
        """Coefficient of x^(n-k) in p_n (c_n for k=1, d_n for k=2, e_n for k=3)."""
        if n - k < 0:
            return self._zero()
        return self.polynomial(n).coeff(n - k)

    def _zero(self):
        return Fraction(0) if not self.symbolic else RatFun.const(0, self._vars())

    def c(self, n: int):
        return self._sub(n, 1)

    def d(self, n: int):
        return self._sub(n, 2)

    def e(self, n: int):
        return self._sub(n, 3)

    def a(self, n: int):
        if n == 0:
            return self._zero()
        return self.h(n) / self.h(n - 1)

    def b(self, n: int):
        if n < 0:
            return self._zero()
        return self.c(n) - self.c(n + 1)

    def record(self, n: int) -> RecurrenceData:
        return RecurrenceData(n, self.a(n), self.b(n), self.h(n), self.c(n), self.d(n), self.e(n))

    def recurrence(self, N: int) -> List[RecurrenceData]:
        """Records for n = 0..N; the sum formulas for c, d, e are asserted."""
        recs = [self.record(n) for n in range(N + 1)]
        check_sum_formulas(recs)
        return recs

    def numerator_polynomial(self, n: int) -> UniPoly:
        """q_n from q_0 = 0, q_1 = mu_0 and the three-term recurrence."""
        zero = self._zero()
        q_prev, q = UniPoly([zero]), UniPoly([self.moments(1)[0]])
        if n == 0:
            return q_prev
        x = UniPoly([zero, zero + 1])
        for k in range(1, n):
            q_prev, q = q, (x - self.b(k)) * q - q_prev * self.a(k)
        return q

    def functional(self, p: UniPoly):
        return moment_functional(p, self.moments(p.degree + 1))


def check_sum_formulas(recs: List[RecurrenceData]) -> None:
    """Assert c_n, d_n, e_n equal their expressions as sums over a_i, b_i.

    The sums are checked through their first differences
    c_{n+1} = c_n - b_n, d_{n+1} = d_n - b_n c_n - a_n and
    e_{n+1} = e_n - b_n d_n - a_n c_{n-1}, which with c_0 = d_0 = e_0 = 0
    are equivalent to the closed sums by induction and avoid summing
    rational functions with unrelated denominators.
    """
    if not recs:
        return
    first = recs[0]
    if first.n != 0 or first.c != 0 or first.d != 0 or first.e != 0:
        raise AssertionError("c_0, d_0, e_0 must vanish")
    for prev, cur in zip(recs, recs[1:]):
        n = prev.n
        c_before = recs[n - 1].c if n >= 1 else 0
        if cur.c != prev.c - prev.b:
            raise AssertionError(f"sum formula for c fails at n={cur.n}")
        if cur.d != prev.d - prev.b * prev.c - prev.a:
            raise AssertionError(f"sum formula for d fails at n={cur.n}")
        if cur.e != prev.e - prev.b * prev.d - prev.a * c_before:
            raise AssertionError(f"sum formula for e fails at n={cur.n}")


def _point_key(at: Point) -> Tuple:
    return tuple(sorted((k, Fraction(v)) for k, v in (at or {}).items()))


@lru_cache(maxsize=256)
def _cached_oracle(family: Family, key: Tuple) -> HankelOracle:
    return HankelOracle(family, dict(key))


def oracle(family: Family, at: Point = None) -> HankelOracle:
    """Shared oracle instance for (family, at)."""
    return _cached_oracle(family, _point_key(at))


@lru_cache(maxsize=64)
def classical_oracle(family: Family) -> HankelOracle:
    """Oracle on the absolutely continuous part alone (jump terms deleted)."""
    return HankelOracle(family.classical(), jumps=False)


def hankel_polynomial(family: Family, n: int, at: Point = None) -> UniPoly:
    return oracle(family, at).polynomial(n)


def oracle_recurrence(family: Family, N: int, at: Point = None) -> List[RecurrenceData]:
    return oracle(family, at).recurrence(N)


def numerator_polynomials(family: Family, N: int, at: Point = None) -> List[UniPoly]:
    o = oracle(family, at)
    return [o.numerator_polynomial(n) for n in range(N + 1)]


@dataclass
class OrthogonalityReport:
    ok: bool
    failures: List[Tuple[int, int, object]]
    norms: List[object]


def verify_orthogonality(family: Family, N: int, at: Point = None) -> OrthogonalityReport:
    """<p_m, p_n> = 0 for m < n <= N and <p_n, p_n> = h_n."""
    o = oracle(family, at)
    failures = []
    norms = []
    for n in range(N + 1):
        pn = o.polynomial(n)
        for m in range(n + 1):
            val = o.functional(o.polynomial(m) * pn)
            expected = o.h(n) if m == n else 0
            if m == n:
                norms.append(val)
            if val != expected:
                failures.append((m, n, val))
    return OrthogonalityReport(not failures, failures, norms)
