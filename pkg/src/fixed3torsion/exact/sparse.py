"""Sparse multivariate polynomials with a weight attached to each variable."""
from __future__ import annotations

from operator import add
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .rational import QQ, Cyclotomic, Rational, qstr

_SCALARS = (int, Rational, Cyclotomic)


def _scalar(c):
    if isinstance(c, (Rational, Cyclotomic)):
        return c
    return QQ(c)


class SparsePoly:
    """Polynomial stored as {exponent tuple: nonzero coefficient}.

    Coefficients are exact rationals (gmpy2 ``mpq``) or :class:`Cyclotomic`.
    Two polynomials can only be combined when their variable lists agree.
    """

    __slots__ = ("vars", "weights", "terms")

    def __init__(self, vars: Sequence[str], terms: Mapping | None = None,
                 weights: Sequence[int] | None = None, _clean: bool = False):
        self.vars = tuple(vars)
        self.weights = tuple(weights) if weights is not None else (1,) * len(self.vars)
        if len(self.weights) != len(self.vars):
            raise ValueError("one weight per variable required")
        if terms is None:
            self.terms = {}
        elif _clean:
            self.terms = terms
        else:
            n = len(self.vars)
            t = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not have arity {n}")
                c = _scalar(c)
                if c:
                    t[e] = t.get(e, 0) + c
                    if not t[e]:
                        del t[e]
            self.terms = t

    # -- constructors -------------------------------------------------
    @classmethod
    def gens(cls, vars: Sequence[str], weights: Sequence[int] | None = None):
        n = len(vars)
        out = []
        for i in range(n):
            e = [0] * n
            e[i] = 1
            out.append(cls(vars, {tuple(e): QQ(1)}, weights, _clean=True))
        return tuple(out)

    @classmethod
    def const(cls, vars, c, weights=None):
        c = _scalar(c)
        terms = {(0,) * len(vars): c} if c else {}
        return cls(vars, terms, weights, _clean=True)

    @classmethod
    def monomial(cls, vars, exps, c=1, weights=None):
        return cls(vars, {tuple(exps): c}, weights)

    def _new(self, terms):
        return SparsePoly(self.vars, terms, self.weights, _clean=True)

    def zero(self):
        return self._new({})

    def one(self):
        return self._new({(0,) * len(self.vars): QQ(1)})

    def _lift(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, _SCALARS):
            return SparsePoly.const(self.vars, other, self.weights)
        raise TypeError(f"cannot combine SparsePoly with {type(other).__name__}")

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e)
            if v is None:
                t[e] = c
            else:
                v = v + c
                if v:
                    t[e] = v
                else:
                    del t[e]
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "SparsePoly":
        c = _scalar(c)
        if not c:
            return self.zero()
        return self._new({e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self.terms, o.terms
        if len(a) < len(b):
            a, b = b, a
        t: dict = {}
        get = t.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(map(add, ea, eb))
                v = get(e)
                t[e] = ca * cb if v is None else v + ca * cb
        return self._new({e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SparsePoly):
            return self.divexact(other)
        c = _scalar(other)
        if isinstance(c, Cyclotomic):
            return self.scale(c.inverse())
        return self.scale(1 / c)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = self.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, SparsePoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, _SCALARS):
            c = _scalar(other)
            if not c:
                return not self.terms
            return self.terms == {(0,) * len(self.vars): c}
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # -- inspection ---------------------------------------------------
    def is_constant(self) -> bool:
        z = (0,) * len(self.vars)
        return all(e == z for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.vars), QQ(0))

    def coeff(self, exps) -> object:
        return self.terms.get(tuple(exps), QQ(0))

    def wdeg(self, exps) -> int:
        return sum(e * w for e, w in zip(exps, self.weights))

    def weighted_degrees(self) -> set[int]:
        return {self.wdeg(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.weighted_degrees()) <= 1

    def weighted_degree(self) -> int:
        degs = self.weighted_degrees()
        if len(degs) != 1:
            raise ValueError(f"polynomial is not weighted-homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def degree(self, var: str | int | None = None) -> int:
        if not self.terms:
            return -1
        if var is None:
            return max(sum(e) for e in self.terms)
        i = self._index(var)
        return max(e[i] for e in self.terms)

    def _index(self, var) -> int:
        return var if isinstance(var, int) else self.vars.index(var)

    def is_rational(self) -> bool:
        return all(not isinstance(c, Cyclotomic) or c.is_rational() for c in self.terms.values())

    def to_rational(self) -> "SparsePoly":
        out = {}
        for e, c in self.terms.items():
            if isinstance(c, Cyclotomic):
                if not c.is_rational():
                    raise ValueError("polynomial has irrational coefficients")
                c = c.re
            out[e] = c
        return self._new(out)

    def to_cyclotomic(self) -> "SparsePoly":
        return self._new({e: Cyclotomic._coerce(c) for e, c in self.terms.items()})

    # -- transformations ----------------------------------------------
    def map_coeffs(self, f) -> "SparsePoly":
        return SparsePoly(self.vars, {e: f(c) for e, c in self.terms.items()}, self.weights)

    def with_weights(self, weights) -> "SparsePoly":
        return SparsePoly(self.vars, self.terms, weights, _clean=True)

    def embed(self, vars: Sequence[str], weights=None) -> "SparsePoly":
        """Rewrite in a larger (or reordered) variable list."""
        idx = [vars.index(v) for v in self.vars]
        n = len(vars)
        t = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, k in zip(idx, e):
                ne[i] = k
            t[tuple(ne)] = c
        return SparsePoly(vars, t, weights, _clean=True)

    def diff(self, var) -> "SparsePoly":
        i = self._index(var)
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                t[tuple(ne)] = c * k
        return self._new(t)

    def evaluate(self, values: Sequence | Mapping):
        """Evaluate at a point; values may be exact scalars or mpmath numbers."""
        if isinstance(values, Mapping):
            values = [values[v] for v in self.vars]
        powers: list[dict] = [dict() for _ in self.vars]

        def pw(i, k):
            d = powers[i]
            if k not in d:
                d[k] = values[i] ** k
            return d[k]

        total = 0
        for e, c in self.terms.items():
            term = c
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            total = total + term
        return total

    def compose(self, images: Sequence) -> "SparsePoly":
        """Substitute variable i by images[i] (SparsePoly over a common ring, or scalars)."""
        ring = next((g for g in images if isinstance(g, SparsePoly)), None)
        if ring is None:
            return self.evaluate(images)
        imgs = [g if isinstance(g, SparsePoly) else ring._lift(g) for g in images]
        cache: list[dict] = [dict() for _ in imgs]

        def pw(i, k):
            d = cache[i]
            if k not in d:
                if k == 1:
                    d[k] = imgs[i]
                elif k % 2 == 0:
                    h = pw(i, k // 2)
                    d[k] = h * h
                else:
                    d[k] = pw(i, k - 1) * imgs[i]
            return d[k]

        acc: dict = {}
        for e, c in self.terms.items():
            term = None
            for i, k in enumerate(e):
                if k:
                    term = pw(i, k) if term is None else term * pw(i, k)
            if term is None:
                term = ring.one()
            for te, tc in term.terms.items():
                v = acc.get(te)
                acc[te] = tc * c if v is None else v + tc * c
        return SparsePoly(ring.vars, {e: c for e, c in acc.items() if c}, ring.weights, _clean=True)

    def subs(self, mapping: Mapping[str, object]) -> "SparsePoly":
        """Substitute some variables by scalars or polynomials in the same ring."""
        gens = SparsePoly.gens(self.vars, self.weights)
        images = [mapping.get(v, g) for v, g in zip(self.vars, gens)]
        images = [self._lift(x) if not isinstance(x, SparsePoly) else x for x in images]
        return self.compose(images)

    def coefficients_in(self, var) -> dict[int, "SparsePoly"]:
        """Split as sum_k c_k * var^k; c_k keep the same variable list."""
        i = self._index(var)
        out: dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[i]
            ne = e[:i] + (0,) + e[i + 1:]
            out.setdefault(k, {})[ne] = c
        return {k: self._new(t) for k, t in out.items()}

    # -- ordering and division ----------------------------------------
    def sorted_terms(self):
        """Terms in canonical graded-lex order (highest first)."""
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]), reverse=True)

    def leading_term(self):
        e = max(self.terms)
        return e, self.terms[e]

    def divexact(self, other) -> "SparsePoly":
        """Exact division; raises ArithmeticError when other does not divide self."""
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("division by the zero polynomial")
        if o.is_constant():
            return self / o.constant_term()
        le, lc = o.leading_term()
        inv = 1 / lc if not isinstance(lc, Cyclotomic) else lc.inverse()
        rem = dict(self.terms)
        q: dict = {}
        while rem:
            e = max(rem)
            c = rem[e]
            d = tuple(a - b for a, b in zip(e, le))
            if min(d) < 0:
                raise ArithmeticError("polynomial division is not exact")
            f = c * inv
            q[d] = f
            for oe, oc in o.terms.items():
                k = tuple(map(add, oe, d))
                v = rem.get(k, 0) - f * oc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return self._new(q)

    def content_denominator(self) -> int:
        from math import lcm
        den = 1
        for c in self.terms.values():
            den = lcm(den, int(c.denominator))
        return den

    def primitive(self) -> tuple:
        """Return (c, P) with self = c*P, P integral primitive, leading coefficient positive."""
        from math import gcd
        if not self:
            return QQ(0), self
        den = self.content_denominator()
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * den))
        c = mpq(g, den)
        if self.sorted_terms()[0][1] < 0:
            c = -c
        return c, self.scale(1 / c)

    # -- text form ----------------------------------------------------
    def to_lines(self) -> list[str]:
        lines = []
        for e, c in self.sorted_terms():
            if isinstance(c, Cyclotomic):
                raise ValueError("text serialization is defined for rational coefficients")
            lines.append(f"{int(c.numerator)}/{int(c.denominator)} " + " ".join(map(str, e)))
        return lines

    @classmethod
    def from_lines(cls, vars, lines: Iterable[str], weights=None) -> "SparsePoly":
        t = {}
        for line in lines:
            parts = line.split()
            t[tuple(int(x) for x in parts[1:])] = QQ(parts[0])
        return cls(vars, t, weights)

    def __repr__(self):
        if not self.terms:
            return "0"
        out = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            cs = repr(c) if isinstance(c, Cyclotomic) else qstr(c)
            if not mono:
                out.append(cs)
            elif cs == "1":
                out.append(mono)
            elif cs == "-1":
                out.append("-" + mono)
            else:
                out.append(f"{cs}*{mono}")
        return " + ".join(out).replace("+ -", "- ")


def poly_ring(names: str | Sequence[str], weights: Sequence[int] | None = None):
    """Convenience: ``a, b = poly_ring("a b")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return SparsePoly.gens(names, weights)
