"""Conversions to sympy, used as an independent reference implementation."""
import sympy as sp

from fixed3torsion.exact import QQ, SparsePoly, UnivPoly


def sym(q):
    q = QQ(q)
    return sp.Rational(int(q.numerator), int(q.denominator))


def to_sympy(f: SparsePoly):
    xs = sp.symbols(f.vars)
    if len(f.vars) == 1:
        xs = (xs,) if not isinstance(xs, tuple) else xs
    out = 0
    for e, c in f.terms.items():
        term = sym(c)
        for x, k in zip(xs, e):
            term *= x ** k
        out += term
    return sp.expand(out)


def univ_to_sympy(f: UnivPoly, x):
    return sum(sym(c) * x ** i for i, c in enumerate(f.coeffs))


def from_sympy_rational(r):
    r = sp.Rational(r)
    return QQ(int(r.p)) / int(r.q)
