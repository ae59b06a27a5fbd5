"""Weierstrass curves y^2 = x^5 + a x^3 + b x^2 + c x + d with isomorphic 3-torsion.

The covariant Z = s*alpha1 + t*alpha7 + u*alpha13 + v*alpha19 acts on the rank-240
module by M = sM(1) + tM(7) + uM(13) + vM(19). Its characteristic polynomial is
the degree-240 division polynomial F(A, B, C, D, Z); the new coefficients come
from the normalized traces tau_n = Tr(M^{6n}) / 6, n = 2..5. The starred case uses
the contravariants beta11..beta29 instead.

Traces are computed exactly: M = N / L with N integral, Tr(N^k) is found modulo
many word-size primes with floating-point BLAS products (exact because every
partial sum stays below 2^53) and recovered by Chinese remaindering.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import gmpy2
import mpmath
import numpy as np

from .exact import QQ, Rational, SparsePoly, UnivPoly, cube_class, cube_reduce, discriminant
from .exact.factor import _primes
from .invariants2 import (ABCD, BASIS, PQRZ, CONTRAVARIANT_DEGREES, COVARIANT_DEGREES,
                          build_invariants, covariant_set, degrees_for, mul_matrix)
from .numerics import DEFAULT_HEIGHT, DEFAULT_PRECISION, integer_relation, newton_refine

log = logging.getLogger(__name__)

N240 = 240
KINDS = {"main": "covariant", "star": "contravariant"}


# -- curves -----------------------------------------------------------------

def quintic_discriminant(a, b, c, d):
    return discriminant(UnivPoly([d, c, b, a, 0, 1]))


def disc_g2(a, b, c, d):
    """Delta = 2^8 disc(x^5 + a x^3 + b x^2 + c x + d)."""
    return 256 * quintic_discriminant(QQ(a), QQ(b), QQ(c), QQ(d))


@dataclass(frozen=True)
class CurveG2W:
    a: Rational
    b: Rational
    c: Rational
    d: Rational
    disc: Rational = field(init=False, compare=False)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, QQ(getattr(self, name)))
        D = disc_g2(self.a, self.b, self.c, self.d)
        if not D:
            raise ValueError(f"singular Weierstrass curve {self.coeffs}")
        object.__setattr__(self, "disc", D)

    @property
    def coeffs(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def rescale(self, u) -> "CurveG2W":
        """The isomorphic model (u^4 a, u^6 b, u^8 c, u^10 d)."""
        u = QQ(u)
        return CurveG2W(u ** 4 * self.a, u ** 6 * self.b, u ** 8 * self.c, u ** 10 * self.d)


def _coeffs(X) -> tuple:
    return X.coeffs if isinstance(X, CurveG2W) else tuple(QQ(x) for x in X)


class G2Coeffs(tuple):
    """(A, B, C, D) with a flag for outputs on the discriminant locus."""

    on_discriminant_locus: bool

    def __new__(cls, values, singular: bool):
        obj = super().__new__(cls, values)
        obj.on_discriminant_locus = singular
        return obj


# -- specialization and exact traces ---------------------------------------

@dataclass
class IntMatrix:
    """A rational 240 x 240 matrix stored as (integer sparse entries) / den."""

    rows: np.ndarray
    cols: np.ndarray
    vals: list
    den: int
    n: int = N240

    @classmethod
    def from_entries(cls, entries: dict, n: int = N240) -> "IntMatrix":
        keys = sorted(k for k, v in entries.items() if v)
        den = 1
        for k in keys:
            den = math.lcm(den, int(entries[k].denominator))
        vals = [int(entries[k] * den) for k in keys]
        rows = np.array([k[0] for k in keys], dtype=np.int64)
        cols = np.array([k[1] for k in keys], dtype=np.int64)
        return cls(rows, cols, vals, den, n)

    def to_entries(self) -> dict:
        return {(int(r), int(c)): QQ(v) / self.den for r, c, v in zip(self.rows, self.cols, self.vals)}

    def dense_mod(self, p: int) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.float64)
        out[self.rows, self.cols] = np.array([v % p for v in self.vals], dtype=np.float64)
        return out

    def max_abs(self) -> int:
        return max((abs(v) for v in self.vals), default=0)


@lru_cache(maxsize=64)
def _specialized(kind: str, degree: int, abcd: tuple, directory) -> dict:
    return mul_matrix(degree, kind, directory, build=False).specialize(abcd)


def specialize_matrix(kind: str, X, stuv: Sequence, directory=None) -> dict:
    """sM(e1) + tM(e2) + uM(e3) + vM(e4) at the curve X, as {(row, col): Rational}."""
    kind = KINDS.get(kind, kind)
    abcd = _coeffs(X)
    stuv = [QQ(x) for x in stuv]
    total: dict = {}
    for w, e in zip(stuv, degrees_for(kind)):
        if not w:
            continue
        for key, val in _specialized(kind, e, abcd, directory).items():
            total[key] = total.get(key, 0) + w * val
    return {k: v for k, v in total.items() if v}


def commutes(kind: str, e1: int, e2: int, X, directory=None) -> bool:
    """Exact test that M(e1) and M(e2) commute after specializing at X.

    The commutator is formed modulo enough primes to exceed twice its entry bound.
    """
    kind = KINDS.get(kind, kind)
    abcd = _coeffs(X)
    A = IntMatrix.from_entries(_specialized(kind, e1, abcd, directory))
    B = IntMatrix.from_entries(_specialized(kind, e2, abcd, directory))
    bits = math.log2(2 * N240 * max(A.max_abs(), 1) * max(B.max_abs(), 1)) + 2
    acc, plist, idx = 0.0, _primes(), -1
    while acc < bits:
        p = plist[idx]
        a, b = A.dense_mod(p), B.dense_mod(p)
        if np.any(np.remainder(_mulmod(a, b, p) - _mulmod(b, a, p), p)):
            return False
        acc += math.log2(p)
        idx -= 1
    return True


@dataclass(frozen=True)
class TraceVector:
    tau2: object
    tau3: object
    tau4: object
    tau5: object
    tau1: object = 0

    def as_tuple(self):
        return (self.tau2, self.tau3, self.tau4, self.tau5)


def _mulmod(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    return np.remainder(A @ B, p)


def _trace_prod(A: np.ndarray, B: np.ndarray, p: int) -> int:
    """Tr(A B) mod p via the entrywise product with B transposed."""
    return int(np.sum(A.astype(np.int64) * B.T.astype(np.int64)) % p)


def _crt_symmetric(residues: list[int], primes: list[int]) -> int:
    x, m = 0, 1
    for r, p in zip(residues, primes):
        t = ((r - x) * pow(m, -1, p)) % p
        x += m * t
        m *= p
    return x - m if x > m // 2 else x


def traces(M, n: int = N240) -> TraceVector:
    """tau_n = Tr(M^{6n}) / 6 for n = 1..5, exactly.

    Products M^3, M^6, M^9, M^12, M^15 are formed modulo each prime; the traces of
    M^{6n} come from Tr(M^{3n} M^{3n}) without ever forming M^18 .. M^30.
    """
    if not isinstance(M, IntMatrix):
        if isinstance(M, dict):
            M = IntMatrix.from_entries(M, n)
        else:
            M = IntMatrix.from_entries({(i, j): QQ(x) for i, row in enumerate(M)
                                        for j, x in enumerate(row) if x}, len(M))
    m = M.max_abs()
    if m == 0:
        return TraceVector(*(QQ(0),) * 4, tau1=QQ(0))
    bits = 30 * math.log2(M.n * m) + 4
    primes: list[int] = []
    plist = _primes()
    acc = 0.0
    idx = len(plist) - 1
    while acc < bits:
        primes.append(plist[idx])
        acc += math.log2(plist[idx])
        idx -= 1
    res = {k: [] for k in (6, 12, 18, 24, 30)}
    for p in primes:
        N1 = M.dense_mod(p)
        N2 = _mulmod(N1, N1, p)
        N3 = _mulmod(N2, N1, p)
        N6 = _mulmod(N3, N3, p)
        N9 = _mulmod(N6, N3, p)
        N12 = _mulmod(N6, N6, p)
        N15 = _mulmod(N12, N3, p)
        res[6].append(_trace_prod(N3, N3, p))
        res[12].append(_trace_prod(N6, N6, p))
        res[18].append(_trace_prod(N9, N9, p))
        res[24].append(_trace_prod(N12, N12, p))
        res[30].append(_trace_prod(N15, N15, p))
    tr = {k: QQ(_crt_symmetric(v, primes)) / QQ(M.den) ** k for k, v in res.items()}
    return TraceVector(tr[12] / 6, tr[18] / 6, tr[24] / 6, tr[30] / 6, tau1=tr[6] / 6)


def newton_coefficients(tv: TraceVector) -> tuple:
    """(c2, c3, c4, c5) of F from the power sums, with tau1 = 0."""
    t2, t3, t4, t5 = tv.as_tuple()
    return (-t2 / 2, -t3 / 3, t2 * t2 / 8 - t4 / 4, t2 * t3 / 6 - t5 / 5)


def abcd_from_traces(tv: TraceVector) -> tuple:
    t2, t3, t4, t5 = tv.as_tuple()
    return (-t2 / 30240, -t3 / 7862400, (3667 * t2 * t2 - 5600 * t4) / 9390915072000,
            (2521 * t2 * t3 - 2688 * t5) / 886312627200000)


def deg240_closed_form(a, b, c, d) -> tuple:
    """(c2, c3, c4, c5) of the degree-240 division polynomial in closed form."""
    return (15120 * a, 2620800 * b, -504 * (70227 * a * a - 831820 * c),
            -1965600 * (2529 * a * b - 33550 * d))


def new_coeffs_g2(X, stuv: Sequence, kind: str = "main", directory=None) -> G2Coeffs:
    """(A, B, C, D) of X(s, t, u, v), or of the starred X*(s, t, u, v)."""
    stuv = [QQ(x) for x in stuv]
    if not any(stuv):
        raise ValueError("(s, t, u, v) must be nonzero")
    M = specialize_matrix(kind, X, stuv, directory)
    out = abcd_from_traces(traces(M))
    singular = disc_g2(*out) == 0
    if singular:
        log.warning("(s,t,u,v)=%s lies on the discriminant locus", stuv)
    return G2Coeffs(out, singular)


def check_deg240(X, directory=None) -> bool:
    """Newton coefficients of M(1) at X agree with the closed-form c2..c5."""
    abcd = _coeffs(X)
    tv = traces(specialize_matrix("main", abcd, (1, 0, 0, 0), directory))
    return tv.tau1 == 0 and newton_coefficients(tv) == deg240_closed_form(*abcd)


def identity_trace_formulas(a, b, c, d) -> tuple:
    """tau2..tau5 of M(1), derived from the closed-form degree-240 coefficients."""
    return (-30240 * a, -7862400 * b, 598806432 * a * a - 1676949120 * c,
            222987492000 * a * b - 329729400000 * d)


# -- model adjustment -------------------------------------------------------

def adjust_model(Y: CurveG2W, target_class) -> CurveG2W:
    """Rescale Y so that its discriminant lies in the cube class of target_class.

    Delta scales by u^40 and 40 = 1 mod 3, so u = target / Delta_Y (reduced modulo
    cubes) always works.
    """
    u = cube_reduce(QQ(target_class) / Y.disc)
    return Y.rescale(u)


# -- findisos ---------------------------------------------------------------

@dataclass(frozen=True)
class SolutionTuple:
    s: Rational
    t: Rational
    u: Rational
    v: Rational
    case: str
    verified: bool
    target: tuple = ()

    @property
    def stuv(self) -> tuple:
        return (self.s, self.t, self.u, self.v)

    def primitive(self) -> tuple[int, ...]:
        """Projective representative: primitive integers, first nonzero positive."""
        return normalize_projective(self.stuv)


def normalize_projective(vec: Sequence) -> tuple[int, ...]:
    vec = [QQ(x) for x in vec]
    den = 1
    for x in vec:
        den = math.lcm(den, int(x.denominator))
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    ints = [x // g for x in ints] if g else ints
    first = next((x for x in ints if x), 0)
    return tuple(-x for x in ints) if first < 0 else tuple(ints)


def _sign_normalize(vec: Sequence) -> tuple:
    first = next((x for x in vec if x), 0)
    return tuple(-x for x in vec) if first < 0 else tuple(vec)


@lru_cache(maxsize=None)
def _system_polys():
    inv = build_invariants()
    F = (inv.a, inv.b, inv.c, inv.d)
    J = tuple(tuple(f.diff(v) for v in PQRZ) for f in F)
    return F, J


def _float_M1(abcd_float: Sequence[float], directory=None) -> np.ndarray:
    M1 = mul_matrix(1, "covariant", directory, build=False)
    out = np.zeros((N240, N240))
    for (r, c), f in M1.entries.items():
        out[r, c] = float(f.evaluate([mpmath.mpf(x) for x in abcd_float]))
    return out


def real_points(X, precision: int = DEFAULT_PRECISION, directory=None) -> list[tuple]:
    """Real solutions (p, q, r, z) of a(P) = a, ..., d(P) = d, at `precision` digits.

    The curve is first rescaled by a power of two so that its weighted size is about 1.
    Starting values come from left eigenvectors of M(1) there (entries of an evaluation
    vector are the basis monomials at the point); each is refined by Newton's method on
    the four defining equations and then scaled back exactly.
    """
    abcd = _coeffs(X)
    mags = [abs(float(x)) ** (1.0 / w) for x, w in zip(abcd, (12, 18, 24, 30)) if x]
    k = -round(math.log2(max(mags))) if mags else 0
    mu = QQ(2) ** k if k >= 0 else QQ(1) / QQ(2) ** (-k)
    scaled = [QQ(x) * mu ** w for x, w in zip(abcd, (12, 18, 24, 30))]
    M1 = _float_M1([float(x) for x in scaled], directory)
    vals, vecs = np.linalg.eig(M1.T)
    F, J = _system_polys()
    idx = {name: BASIS.index(*e) for name, e in
           (("p", (1, 0, 0, 0)), ("q", (0, 1, 0, 0)), ("r", (0, 0, 1, 0)))}
    points = []
    with mpmath.workdps(precision + 20):
        tgt = [mpmath.mpf(int(x.numerator)) / int(x.denominator) for x in scaled]
        back = [mpmath.mpf(int(mu.numerator)) / int(mu.denominator)] * 4
        back = [back[0] ** w for w in (6, 9, 12, 1)]

        def Fx(x):
            return [f.evaluate(x) - t for f, t in zip(F, tgt)]

        def Jx(x):
            return [[g.evaluate(x) for g in row] for row in J]

        tol = mpmath.mpf(10) ** (-(precision // 2))
        for k in np.argsort(np.abs(vals.imag)):
            lam = vals[k]
            if abs(lam.imag) > 1e-3 * max(1.0, abs(lam)):
                break
            v = vecs[:, k]
            if abs(v[0]) < 1e-300:
                continue
            guess = [v[idx["p"]] / v[0], v[idx["q"]] / v[0], v[idx["r"]] / v[0], lam]
            x, ok = newton_refine(Fx, Jx, [complex(g.real, 0.0) for g in guess], precision)
            if not ok or any(abs(mpmath.im(c)) > tol * max(1, abs(c)) for c in x):
                continue
            x = tuple(mpmath.re(c) / b for c, b in zip(x, back))
            if all(abs(x[3] - y[3]) > tol * max(1, abs(x[3])) for y in points):
                points.append(x)
    points.sort(key=lambda P: float(P[3]))
    return points


def _forms(kind: str) -> tuple[SparsePoly, ...]:
    cs = covariant_set()
    return cs.alpha if KINDS.get(kind, kind) == "covariant" else cs.beta


def findisos(X: CurveG2W, Y: CurveG2W, precision: int = DEFAULT_PRECISION,
             cases: Sequence[str] = ("main", "star"), height: int = DEFAULT_HEIGHT,
             directory=None) -> list[SolutionTuple]:
    """Rational (s, t, u, v) with X(s,t,u,v) (or X*) equal to a suitable model of Y.

    For each case Y is first rescaled into the needed cube class (Delta_X for the
    main case, 1/Delta_X for the starred one). Real points of X give the values of
    the four covariants (contravariants); real points of Y give the candidate roots
    Z; an integer relation among them proposes (s, t, u, v), and only exact
    reproductions of the rescaled Y are returned (one of each +- pair).
    """
    X = X if isinstance(X, CurveG2W) else CurveG2W(*_coeffs(X))
    Y = Y if isinstance(Y, CurveG2W) else CurveG2W(*_coeffs(Y))
    src = real_points(X, precision, directory)
    out: list[SolutionTuple] = []
    for case in cases:
        target_class = X.disc if case == "main" else 1 / X.disc
        Yc = adjust_model(Y, target_class)
        if not cube_class(X.disc / Yc.disc if case == "main" else X.disc * Yc.disc)[0]:
            continue
        roots = [P[3] for P in real_points(Yc, precision, directory)]
        forms = _forms(case)
        seen = set()
        with mpmath.workdps(precision + 20):
            for P in src:
                vals = [f.evaluate(P) for f in forms]
                for Z in roots:
                    rel = integer_relation(vals + [-Z], precision, height)
                    if rel is None or rel[4] == 0:
                        continue
                    cand = _sign_normalize(tuple(QQ(n) / rel[4] for n in rel[:4]))
                    if cand in seen:
                        continue
                    seen.add(cand)
                    got = new_coeffs_g2(X, cand, case, directory)
                    if tuple(got) == Yc.coeffs:
                        out.append(SolutionTuple(*cand, case=case, verified=True, target=Yc.coeffs))
    return out


# -- Richelot family --------------------------------------------------------

@dataclass(frozen=True)
class RichelotParams:
    e: Rational
    f: Rational
    g: Rational


def richelot_abcd(e, f, g) -> tuple:
    return (-5 * (7 * e ** 2 - 2 * f), -10 * e * (3 * e ** 2 - 2 * f),
            5 * (32 * e ** 4 - 39 * e ** 2 * f + g), -4 * e * (24 * e ** 4 + 115 * e ** 2 * f - 5 * g))


def richelot_disc(e, f, g):
    return (-2 ** 12 * 5 ** 5 * (125 * e ** 4 + 20 * f ** 2 - 4 * g) ** 2
            * (25 * e ** 2 * f - g) * (25 * e ** 2 * f + g) ** 2)


def richelot_scale(e, f, g):
    return 2 ** 3 * 5 ** 4 * (125 * e ** 4 + 20 * f ** 2 - 4 * g) ** 4 * (25 * e ** 2 * f + g) ** 6


def richelot_candidate(e, f, g) -> tuple:
    return (-4 * e * (80 * e ** 4 + 7 * e ** 2 * f - g), 2 * (40 * e ** 4 - 9 * e ** 2 * f - g),
            -4 * e * (5 * e ** 2 + 2 * f), 5 * e ** 2 + 2 * f)


def richelot_family(P: RichelotParams) -> tuple[CurveG2W, CurveG2W, SolutionTuple]:
    """X_{e,f,g}, a model of its Richelot partner Y, and a candidate starred tuple."""
    e, f, g = (QQ(x) for x in (P.e, P.f, P.g))
    if not richelot_disc(e, f, g):
        raise ValueError(f"singular family member (e, f, g) = ({e}, {f}, {g})")
    X = CurveG2W(*richelot_abcd(e, f, g))
    z = richelot_scale(e, f, g)
    ab, bb, cb, db = richelot_abcd(e, -f, g)
    Y = CurveG2W(ab * z ** 2, bb * z ** 3, cb * z ** 4, db * z ** 5)
    candidate = SolutionTuple(*richelot_candidate(e, f, g), case="star", verified=False)
    return X, Y, candidate


def symbolic_richelot():
    """(a, b, c, d) and the quintic discriminant check over Q[e, f, g]."""
    e, f, g = SparsePoly.gens(("e", "f", "g"))
    abcd = richelot_abcd(e, f, g)
    x = UnivPoly([abcd[3], abcd[2], abcd[1], abcd[0], e.zero(), e.one()])
    disc = discriminant(x) * 256
    return abcd, disc, richelot_disc(e, f, g)
