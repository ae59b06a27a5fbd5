"""Dense univariate polynomials, subresultant resultants, discriminants, rational roots."""
from __future__ import annotations

from typing import Sequence

from .rational import QQ, Rational
from .sparse import SparsePoly


def _is_zero(c) -> bool:
    return not c


class UnivPoly:
    """Dense polynomial sum c[i] x^i over Q or over a SparsePoly ring."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [c if isinstance(c, (SparsePoly, Rational)) else QQ(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = cs

    @classmethod
    def from_sparse(cls, f: SparsePoly, var) -> "UnivPoly":
        """View f as a polynomial in `var` with coefficients in f's ring."""
        parts = f.coefficients_in(var)
        if not parts:
            return cls([])
        n = max(parts)
        zero = f.zero()
        return cls([parts.get(k, zero) for k in range(n + 1)])

    def to_sparse(self, var, ring_template: SparsePoly) -> SparsePoly:
        x = SparsePoly.gens(ring_template.vars, ring_template.weights)[ring_template.vars.index(var)]
        acc, xp = ring_template.zero(), ring_template.one()
        for c in self.coeffs:
            acc = acc + xp * c
            xp = xp * x
        return acc

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UnivPoly):
            other = UnivPoly([other])
        return self.coeffs == other.coeffs

    def __add__(self, other):
        other = other if isinstance(other, UnivPoly) else UnivPoly([other])
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UnivPoly([x + y for x, y in zip(a, b)] + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return UnivPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-(other if isinstance(other, UnivPoly) else UnivPoly([other])))

    def __mul__(self, other):
        if not isinstance(other, UnivPoly):
            return UnivPoly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UnivPoly([])
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                v = x * y
                out[i + j] = v if out[i + j] is None else out[i + j] + v
        return UnivPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        r = UnivPoly([1])
        for _ in range(n):
            r = r * self
        return r

    def derivative(self) -> "UnivPoly":
        return UnivPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift_mul(self, k: int) -> "UnivPoly":
        zero = self.coeffs[0] * 0 if self.coeffs else QQ(0)
        return UnivPoly([zero] * k + self.coeffs)

    def __repr__(self):
        return f"UnivPoly({self.coeffs!r})"


def prem(A: UnivPoly, B: UnivPoly) -> UnivPoly:
    """Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B, computed without division."""
    if not B:
        raise ZeroDivisionError("pseudo-remainder by zero polynomial")
    db = B.degree()
    lb = B.lc()
    r = list(A.coeffs)
    e = A.degree() - db + 1
    if e <= 0:
        return A
    for _ in range(e):
        if len(r) - 1 < db:
            r = [c * lb for c in r]
            continue
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, bc in enumerate(B.coeffs):
            r[i + shift] = r[i + shift] - lr * bc
        r.pop()
        while r and _is_zero(r[-1]):
            r.pop()
    return UnivPoly(r)


def _exact_div(x, y):
    if isinstance(x, SparsePoly) or isinstance(y, SparsePoly):
        if not isinstance(x, SparsePoly):
            x = y._lift(x)
        return x.divexact(y) if isinstance(y, SparsePoly) else x / y
    return x / y


def resultant(f: UnivPoly, g: UnivPoly):
    """Res(f, g) by the subresultant pseudo-remainder sequence."""
    if not f or not g:
        raise ValueError("resultant of a zero polynomial")
    A, B = f, g
    s = 1
    if A.degree() < B.degree():
        A, B = B, A
        if A.degree() % 2 and B.degree() % 2:
            s = -1
    if B.degree() == 0:
        return (B.lc() ** A.degree()) * s
    one = QQ(1)
    gg = one
    h = one
    while True:
        da, db = A.degree(), B.degree()
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = prem(A, B)
        A = B
        if not R:
            return A.lc() * 0
        divisor = gg * h ** delta
        B = UnivPoly([_exact_div(c, divisor) for c in R.coeffs])
        gg = A.lc()
        if delta == 0:
            pass
        elif delta == 1:
            h = gg
        else:
            h = _exact_div(gg ** delta, h ** (delta - 1))
        if B.degree() == 0:
            da = A.degree()
            if da == 0:
                return B.lc() * s
            res = _exact_div(B.lc() ** da, h ** (da - 1))
            return res * s


def discriminant(f: UnivPoly):
    """(-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree()
    if n < 2:
        raise ValueError("discriminant needs degree >= 2")
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return _exact_div(r * sign, f.lc())


# -- polynomials over Q ------------------------------------------------

def monic(f: UnivPoly) -> UnivPoly:
    lc = f.lc()
    return UnivPoly([c / lc for c in f.coeffs])


def poly_divmod(f: UnivPoly, g: UnivPoly) -> tuple[UnivPoly, UnivPoly]:
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(f.coeffs)
    dg = g.degree()
    q = [QQ(0)] * max(len(r) - dg, 0)
    lg = g.lc()
    while len(r) - 1 >= dg and r:
        k = len(r) - 1 - dg
        c = r[-1] / lg
        q[k] = c
        for i, gc in enumerate(g.coeffs):
            r[i + k] -= c * gc
        r.pop()
        while r and not r[-1]:
            r.pop()
    return UnivPoly(q), UnivPoly(r)


def poly_gcd(f: UnivPoly, g: UnivPoly) -> UnivPoly:
    """Monic gcd over Q."""
    a, b = f, g
    while b:
        a, b = b, poly_divmod(a, b)[1]
    return monic(a) if a else a


def squarefree_part(f: UnivPoly) -> UnivPoly:
    g = poly_gcd(f, f.derivative())
    return monic(poly_divmod(f, g)[0]) if g.degree() > 0 else monic(f)


def integer_primitive(f: UnivPoly) -> list[int]:
    """Scale f over Q to a primitive integer coefficient list."""
    from math import gcd, lcm
    den = 1
    for c in f.coeffs:
        den = lcm(den, int(QQ(c).denominator))
    ints = [int(QQ(c) * den) for c in f.coeffs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints]


def rational_roots(f: UnivPoly) -> list:
    """All rational roots of f over Q, listed with multiplicity.

    Candidates come from high-precision complex roots of the squarefree part:
    a rational root n/d in lowest terms has d | lc, so lc*root is an integer.
    Every candidate is confirmed by exact evaluation.
    """
    from .. import numerics

    if not f:
        raise ValueError("rational_roots of the zero polynomial")
    roots: list = []
    f = UnivPoly([QQ(c) for c in f.coeffs])
    # strip x^k
    k = 0
    while f.coeffs and not f.coeffs[0]:
        f = UnivPoly(f.coeffs[1:])
        k += 1
    roots += [QQ(0)] * k
    if f.degree() <= 0:
        return roots
    sf = squarefree_part(f)
    ints = integer_primitive(sf)
    lc = abs(ints[-1])
    if sf.degree() == 1:
        cands = [-sf.coeffs[0] / sf.coeffs[1]]
    else:
        bound = 1 + max(abs(x) for x in ints[:-1]) / abs(ints[-1])
        digits = len(str(lc)) + len(str(int(bound) + 1)) + 30
        approx = numerics.poly_roots(UnivPoly(ints), precision=max(50, digits))
        cands = []
        import mpmath
        with mpmath.workdps(max(50, digits)):
            for z in approx:
                n = int(mpmath.nint(mpmath.re(z) * lc))
                cands.append(QQ(n) / lc)
    seen = set()
    for c in cands:
        if c in seen or sf(c) != 0:
            continue
        seen.add(c)
        lin = UnivPoly([-c, 1])
        g = f
        while True:
            q, r = poly_divmod(g, lin)
            if r:
                break
            roots.append(c)
            g = q
    return sorted(roots)
