"""Exact rational scalars and the shifted factorial."""
from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]


def Q(value) -> Fraction:
    """Coerce ``value`` (int, Fraction or a ``"p/q"`` string) to a Fraction.

    Floats are refused: every quantity in this package is exact.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty rational")
        try:
            return Fraction(text)
        except ValueError as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass 'p/q' strings or Fractions")
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def pochhammer(a: Rational, n: int) -> Fraction:
    """Shifted factorial (a)_n = a (a+1) ... (a+n-1), with (a)_0 = 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0; see pochhammer_ext for n < 0")
    a = Q(a)
    out = Fraction(1)
    for k in range(n):
        out *= a + k
    return out


def pochhammer_ext(a: Rational, n: int) -> Fraction:
    """Shifted factorial extended to negative n by (a)_n = Gamma(a+n)/Gamma(a).

    For n < 0 this is 1/((a-1)(a-2)...(a+n)); it is what the closed-form
    asymptotics need at n = 0, where (a)_{-1} = 1/(a-1) appears.
    """
    if n >= 0:
        return pochhammer(a, n)
    a = Q(a)
    den = Fraction(1)
    for k in range(1, -n + 1):
        den *= a - k
    if den == 0:
        raise ZeroDivisionError(f"({a})_{n} has a pole")
    return 1 / den


def factorial(n: int) -> Fraction:
    return pochhammer(1, n)


def render(value: Rational) -> str:
    """Canonical text form: ``p/q`` with q > 0, or ``p`` for integers."""
    return str(Q(value))
