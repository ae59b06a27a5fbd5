"""Rational scalars and the cyclotomic field Q(w), w^2 + w + 1 = 0."""
from __future__ import annotations

from fractions import Fraction

import gmpy2
from gmpy2 import mpq, mpz

Rational = type(mpq(0))


def QQ(x) -> "mpq":
    """Coerce ints, Fractions, strings like '-3/7' and mpq to an exact rational."""
    if isinstance(x, Rational):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            n, d = x.split("/")
            return mpq(int(n), int(d))
        return mpq(int(x))
    if isinstance(x, (int, type(mpz(0)))):
        return mpq(x)
    if isinstance(x, float):
        raise TypeError("refusing to coerce a float to an exact rational")
    return mpq(x)


def to_fraction(q) -> Fraction:
    q = QQ(q)
    return Fraction(int(q.numerator), int(q.denominator))


def qstr(q) -> str:
    q = QQ(q)
    if q.denominator == 1:
        return str(int(q.numerator))
    return f"{int(q.numerator)}/{int(q.denominator)}"


def qjson(q) -> dict:
    q = QQ(q)
    return {"num": str(int(q.numerator)), "den": str(int(q.denominator))}


class Cyclotomic:
    """Element re + wc*w of Q(w), w a primitive cube root of unity."""

    __slots__ = ("re", "wc")

    def __init__(self, re=0, wc=0):
        self.re = QQ(re)
        self.wc = QQ(wc)

    @classmethod
    def _coerce(cls, x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        return cls(x, 0)

    def __add__(self, other):
        o = Cyclotomic._coerce(other)
        return Cyclotomic(self.re + o.re, self.wc + o.wc)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(-self.re, -self.wc)

    def __sub__(self, other):
        o = Cyclotomic._coerce(other)
        return Cyclotomic(self.re - o.re, self.wc - o.wc)

    def __rsub__(self, other):
        return Cyclotomic._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Cyclotomic):
            o = QQ(other)
            return Cyclotomic(self.re * o, self.wc * o)
        # (x + yw)(u + vw) = xu + (xv + yu)w + yv w^2,  w^2 = -1 - w
        x, y, u, v = self.re, self.wc, other.re, other.wc
        yv = y * v
        return Cyclotomic(x * u - yv, x * v + y * u - yv)

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        return Cyclotomic(self.re - self.wc, -self.wc)

    def norm(self):
        x, y = self.re, self.wc
        return x * x - x * y + y * y

    def inverse(self) -> "Cyclotomic":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conj()
        return Cyclotomic(c.re / n, c.wc / n)

    def __truediv__(self, other):
        return self * Cyclotomic._coerce(other).inverse()

    def __rtruediv__(self, other):
        return Cyclotomic._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Cyclotomic(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = Cyclotomic._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.wc == o.wc

    def __hash__(self):
        if self.wc == 0:
            return hash(self.re)
        return hash((self.re, self.wc))

    def __bool__(self):
        return bool(self.re) or bool(self.wc)

    def is_rational(self) -> bool:
        return self.wc == 0

    def to_complex(self) -> complex:
        w = complex(-0.5, 3 ** 0.5 / 2)
        return float(self.re) + float(self.wc) * w

    def __repr__(self):
        if self.wc == 0:
            return f"Cyclotomic({qstr(self.re)})"
        return f"Cyclotomic({qstr(self.re)} + {qstr(self.wc)}*w)"


OMEGA = Cyclotomic(0, 1)
OMEGA_BAR = OMEGA.conj()
SQRT_M3 = 2 * OMEGA + 1


def is_cube_int(n) -> tuple[bool, int]:
    n = int(n)
    if n < 0:
        ok, r = is_cube_int(-n)
        return ok, -r
    r, exact = gmpy2.iroot(mpz(n), 3)
    return bool(exact), int(r)
