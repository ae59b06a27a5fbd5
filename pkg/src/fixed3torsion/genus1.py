"""Elliptic curves y^2 = x^3 + a x + b with isomorphic 3-torsion.

The H-invariant ring Q[w, z] is free of rank eight over the G-invariant ring
Q[a, b]. Multiplication by a covariant s*alpha1 + t*alpha3 (or a contravariant
s*beta3 + t*beta5) on the basis 1, z^2, z^4, z^6, alpha1, alpha3, beta3, beta5
has characteristic polynomial F(A, B, u), where F is the octic 3-division
polynomial. Reading off (A, B) gives the curves whose 3-torsion is identified
with that of (a, b), symplectically in the main case and antisymplectically in
the starred case.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .exact import (GradedModule, GradedModuleSpec, QQ, Rational, SparsePoly, UnivPoly,
                    cube_class, rational_roots, resultant)
from .exact.linalg import charpoly
from .exact.univariate import poly_gcd
from .groups import reflection_generators, dual_fixed_vector

BASIS_LABELS = ("1", "z^2", "z^4", "z^6", "alpha1", "alpha3", "beta3", "beta5")
MAIN_WEIGHTS = (4, 6, -1, -3)
STAR_WEIGHTS = (4, 6, -3, -5)


class UnsupportedCaseError(ValueError):
    """Input lies outside the range where the construction is separable."""


class PatternError(ArithmeticError):
    """A characteristic polynomial did not have the shape of F(A, B, u)."""


@dataclass(frozen=True)
class CurveG1:
    a: Rational
    b: Rational
    disc_reduced: Rational = field(init=False)
    disc: Rational = field(init=False)

    def __post_init__(self):
        a, b = QQ(self.a), QQ(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        dr = -4 * a ** 3 - 27 * b ** 2
        if not dr:
            raise ValueError(f"singular curve (a, b) = ({a}, {b})")
        object.__setattr__(self, "disc_reduced", dr)
        object.__setattr__(self, "disc", 16 * dr)


def disc_g1(a, b):
    """Delta(a, b) = 16 (-4a^3 - 27b^2); works on scalars and polynomials."""
    return (a ** 3 * (-4) - b ** 2 * 27) * 16


@dataclass(frozen=True)
class InvariantDataG1:
    w: SparsePoly
    a: SparsePoly
    b: SparsePoly
    alpha1: SparsePoly
    alpha3: SparsePoly
    beta3: SparsePoly
    beta5: SparsePoly


@lru_cache(maxsize=None)
def invariant_data() -> InvariantDataG1:
    u, z = SparsePoly.gens(("u", "z"), (1, 1))
    w = u ** 3 / 3 + u ** 2 * z + u * z ** 2
    a = w * z / 9
    b = (w ** 2 - 6 * w * z ** 3 - 3 * z ** 6) / 324
    W, Z = SparsePoly.gens(("w", "z"), (3, 1))
    return InvariantDataG1(
        w=w, a=a, b=b,
        alpha1=Z,
        alpha3=(W + Z ** 3) / 6,
        beta3=(W - Z ** 3) / 2,
        beta5=(5 * W * Z ** 2 + 3 * Z ** 5) / 18,
    )


@lru_cache(maxsize=None)
def module_g1() -> GradedModule:
    """Q[w, z] as a free Q[a, b]-module."""
    d = invariant_data()
    W, Z = SparsePoly.gens(("w", "z"), (3, 1))
    spec = GradedModuleSpec(
        ambient_vars=("w", "z"), ambient_weights=(3, 1),
        generator_names=("a", "b"),
        generators=(W * Z / 9, (W ** 2 - 6 * W * Z ** 3 - 3 * Z ** 6) / 324),
        basis=(W ** 0, Z ** 2, Z ** 4, Z ** 6, d.alpha1, d.alpha3, d.beta3, d.beta5),
        basis_labels=BASIS_LABELS,
    )
    return GradedModule(spec)


def division_poly_g1(X: CurveG1) -> UnivPoly:
    """z^8 + 18 a z^4 + 108 b z^2 - 27 a^2."""
    if not X.a:
        raise UnsupportedCaseError("a = 0 makes the octic inseparable in this model")
    a, b = X.a, X.b
    return UnivPoly([-27 * a * a, 0, 108 * b, 0, 18 * a, 0, 0, 0, 1])


def octic_F(A, B, u):
    return u ** 8 + u ** 4 * A * 18 + u ** 2 * B * 108 - A * A * 27


def _mul_matrix(module: GradedModule, e: SparsePoly) -> list[list[SparsePoly]]:
    ab_zero = SparsePoly(("a", "b"), {}, (4, 6))
    basis = module.spec.basis
    n = len(basis)
    M = [[ab_zero] * n for _ in range(n)]
    for m, bm in enumerate(basis):
        for r, c in module.reduce(e * bm).items():
            M[r][m] = c
    return M


@lru_cache(maxsize=None)
def basis_matrices_g1() -> dict[str, list[list[SparsePoly]]]:
    """Matrices of multiplication by alpha1, alpha3, beta3, beta5 over Q[a, b]."""
    mod = module_g1()
    d = invariant_data()
    return {name: _mul_matrix(mod, getattr(d, name))
            for name in ("alpha1", "alpha3", "beta3", "beta5")}


def _combined_charpoly(first: str, second: str, weights) -> list[SparsePoly]:
    Ms = basis_matrices_g1()
    ring = ("a", "b", "s", "t")
    zero = SparsePoly(ring, {}, weights)
    _, _, s, t = SparsePoly.gens(ring, weights)
    M1, M2 = Ms[first], Ms[second]
    n = len(M1)
    M = [[M1[i][j].embed(ring, weights) * s + M2[i][j].embed(ring, weights) * t
          for j in range(n)] for i in range(n)]
    return charpoly(M, zero, zero.one())


def _match_F(cp: list[SparsePoly]) -> tuple[SparsePoly, SparsePoly]:
    if len(cp) != 9 or cp[8] != 1:
        raise PatternError("expected a monic octic")
    for k in (7, 6, 5, 3, 1):
        if cp[k]:
            raise PatternError(f"unexpected nonzero coefficient of u^{k}")
    A = cp[4] / 18
    B = cp[2] / 108
    if cp[0] != A * A * (-27):
        raise PatternError("constant term is not -27 A^2")
    return A, B


@lru_cache(maxsize=None)
def charpoly_main() -> list[SparsePoly]:
    """Coefficients (low to high in u) of the characteristic polynomial of s*alpha1 + t*alpha3."""
    return _combined_charpoly("alpha1", "alpha3", MAIN_WEIGHTS)


@lru_cache(maxsize=None)
def charpoly_star() -> list[SparsePoly]:
    return _combined_charpoly("beta3", "beta5", STAR_WEIGHTS)


@lru_cache(maxsize=None)
def star_forms() -> tuple[SparsePoly, SparsePoly]:
    """Symbolic (A*, B*) in Q[a, b, s, t], recovered from the characteristic polynomial."""
    return _match_F(charpoly_star())


def new_coeffs_g1(a, b, s, t):
    """(A, B) from the closed forms; arguments may be rationals or polynomials."""
    args = [x if isinstance(x, SparsePoly) else QQ(x) for x in (a, b, s, t)]
    a, b, s, t = args
    A = (3 * a * s ** 4 + 18 * b * s ** 3 * t - 6 * a ** 2 * s ** 2 * t ** 2
         - 6 * a * b * s * t ** 3 - (a ** 3 + 9 * b ** 2) * t ** 4) / 3
    B = (9 * b * s ** 6 - 12 * a ** 2 * s ** 5 * t - 45 * a * b * s ** 4 * t ** 2
         - 90 * b ** 2 * s ** 3 * t ** 3 + 15 * a ** 2 * b * s ** 2 * t ** 4
         - 2 * a * (2 * a ** 3 + 9 * b ** 2) * s * t ** 5
         - 3 * b * (a ** 3 + 6 * b ** 2) * t ** 6) / 9
    return A, B


def symbolic_new_coeffs_g1() -> tuple[SparsePoly, SparsePoly]:
    a, b, s, t = SparsePoly.gens(("a", "b", "s", "t"), MAIN_WEIGHTS)
    return new_coeffs_g1(a, b, s, t)


def new_coeffs_g1_star(a, b, s, t):
    As, Bs = star_forms()
    vals = [x if isinstance(x, SparsePoly) else QQ(x) for x in (a, b, s, t)]
    if any(isinstance(x, SparsePoly) for x in vals):
        return As.compose(vals), Bs.compose(vals)
    return As.evaluate(vals), Bs.evaluate(vals)


@dataclass(frozen=True)
class DiscIdentity:
    kappa: Rational
    q: SparsePoly  # binary quartic in s, t over Q[a, b], q(1, 0) = 1
    homogenized_elliptic3: SparsePoly  # 3s^4 + 6a s^2t^2 + 12b s t^3 - a^2 t^4
    ratio: Rational  # q = ratio * homogenized_elliptic3
    swapped_form_matches: bool


def _cube_root_binary_form(Q: SparsePoly, deg: int) -> tuple[Rational, SparsePoly]:
    """Write Q = kappa * q^3 with q of degree deg in (s, t), q(1, 0) = 1."""
    ring = Q.vars
    si, ti = ring.index("s"), ring.index("t")
    ab = ("a", "b")

    def coeff_st(P: SparsePoly, i: int, j: int) -> SparsePoly:
        out = {}
        for e, c in P.terms.items():
            if e[si] == i and e[ti] == j:
                out[tuple(x for k, x in enumerate(e) if k not in (si, ti))] = c
        return SparsePoly(ab, out, (4, 6))

    N = 3 * deg
    lead = coeff_st(Q, N, 0)
    if not lead.is_constant() or not lead:
        raise ArithmeticError("leading coefficient in s is not a nonzero constant")
    kappa = lead.constant_term()
    s, t = SparsePoly.gens(ring, Q.weights)[si], SparsePoly.gens(ring, Q.weights)[ti]
    q = s ** deg
    for k in range(1, deg + 1):
        partial = q * q * q
        target = coeff_st(Q, N - k, k) / kappa - coeff_st(partial, N - k, k)
        q = q + (target / 3).embed(ring, Q.weights) * s ** (deg - k) * t ** k
    if q * q * q * kappa != Q:
        raise ArithmeticError("form is not kappa times a cube")
    return kappa, q


@lru_cache(maxsize=None)
def disc_identity_g1() -> DiscIdentity:
    A, B = symbolic_new_coeffs_g1()
    a, b, s, t = SparsePoly.gens(("a", "b", "s", "t"), MAIN_WEIGHTS)
    Q = disc_g1(A, B).divexact(disc_g1(a, b))
    kappa, q = _cube_root_binary_form(Q, 4)
    h = 3 * s ** 4 + 6 * a * s ** 2 * t ** 2 + 12 * b * s * t ** 3 - a ** 2 * t ** 4
    ratio = q.coeff((0, 0, 4, 0)) / h.coeff((0, 0, 4, 0))
    if q != h * ratio:
        raise ArithmeticError("derived quartic is not proportional to the 3-torsion quartic")
    swapped = 3 * t ** 4 + 6 * a * s ** 2 * t ** 2 + 12 * b * s * t - a ** 2 * s ** 4
    swapped_ok = disc_g1(A, B) == disc_g1(a, b) * swapped ** 3 * 27
    return DiscIdentity(kappa, q, h, ratio, swapped_ok)


def matricial_identity_g1() -> bool:
    """Check E(A(a,b,s,t), B(a,b,s,t), S, T) = E(a, b, M(S,T)^t) for E in {A, B}."""
    ring = ("a", "b", "s", "t", "S", "T")
    a, b, s, t, S, T = SparsePoly.gens(ring)
    A, B = new_coeffs_g1(a, b, s, t)
    m11, m12 = s, -a * s ** 2 * t - 3 * b * s * t ** 2 + a ** 2 * t ** 3 / 3
    m21, m22 = t, s ** 3 + a * s * t ** 2 + b * t ** 3
    S2 = m11 * S + m12 * T
    T2 = m21 * S + m22 * T
    lhs = new_coeffs_g1(A, B, S, T)
    rhs = new_coeffs_g1(a, b, S2, T2)
    return lhs[0] == rhs[0] and lhs[1] == rhs[1]


def _solve_pair(P1: SparsePoly, P2: SparsePoly) -> list[tuple]:
    """Rational common zeros (s, t) of two polynomials in Q[s, t]."""
    f1, f2 = UnivPoly.from_sparse(P1, "s"), UnivPoly.from_sparse(P2, "s")
    res = resultant(f1, f2)
    res = res if isinstance(res, SparsePoly) else P1.const(P1.vars, res)
    if not res:
        raise ArithmeticError("the two equations share a common factor")
    rt = UnivPoly([c.constant_term() for c in UnivPoly.from_sparse(res, "t").coeffs])
    sols = set()
    if rt.degree() <= 0:
        return []
    for t0 in set(rational_roots(rt)):
        g1 = UnivPoly([c.evaluate([0, t0]) for c in f1.coeffs])
        g2 = UnivPoly([c.evaluate([0, t0]) for c in f2.coeffs])
        g = poly_gcd(g1, g2)
        if g.degree() <= 0:
            continue
        for s0 in set(rational_roots(g)):
            if P1.evaluate([s0, t0]) == 0 and P2.evaluate([s0, t0]) == 0:
                sols.add((s0, t0))
    return sorted(sols)


def find_st(X: CurveG1, Y: CurveG1) -> dict[str, list[tuple]]:
    """All rational (s, t) carrying X to Y, split by main and starred case."""
    s, t = SparsePoly.gens(("s", "t"))
    out = {"main": [], "star": []}
    if cube_class(X.disc / Y.disc)[0]:
        A, B = new_coeffs_g1(X.a, X.b, s, t)
        out["main"] = _verified(_solve_pair(A - Y.a, B - Y.b), X, Y, new_coeffs_g1)
    if cube_class(X.disc * Y.disc)[0]:
        A, B = new_coeffs_g1_star(X.a, X.b, s, t)
        out["star"] = _verified(_solve_pair(A - Y.a, B - Y.b), X, Y, new_coeffs_g1_star)
    return out


def _verified(sols, X, Y, fn):
    return [st for st in sols if fn(X.a, X.b, *st) == (Y.a, Y.b)]


def derived_contravariants_g1() -> tuple[SparsePoly, SparsePoly]:
    """(v . grad a, v . grad b) for the H-fixed vector v, rewritten in Q[w, z]."""
    d = invariant_data()
    v = dual_fixed_vector(reflection_generators("g1")[:1])
    W, Z = SparsePoly.gens(("w", "z"), (3, 1))
    spec = GradedModuleSpec(
        ambient_vars=("u", "z"), ambient_weights=(1, 1),
        generator_names=("w", "z"), generators=(d.w, SparsePoly.gens(("u", "z"))[1]),
        basis=(d.w.one(),),
    )
    mod = GradedModule(spec)
    out = []
    for inv in (d.a, d.b):
        grad = inv.diff("u") * v[0] + inv.diff("z") * v[1]
        red = mod.reduce(grad)
        out.append(red[0].with_weights((3, 1)))
    return tuple(out)


def proportionality(f: SparsePoly, g: SparsePoly):
    """Return c with f = c g, or None."""
    if not g:
        return None
    e, c = g.leading_term()
    r = f.coeff(e) / c
    return r if f == g * r else None
