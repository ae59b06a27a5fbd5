"""Arbitrary-precision numerics that propose candidates for exact verification.

Everything here works in mpmath at an explicit number of decimal digits. Nothing
returned from this module is trusted without an exact check by the caller.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
import numpy as np
from gmpy2 import mpq, mpz

from .exact.rational import QQ
from .exact.univariate import UnivPoly, poly_gcd

log = logging.getLogger(__name__)

DEFAULT_PRECISION = 250
DEFAULT_HEIGHT = 10 ** 20


def _mpf(q):
    q = QQ(q)
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def poly_roots(f: UnivPoly | Sequence, precision: int = 50, maxsteps: int = 500) -> list:
    """All complex roots of a squarefree rational polynomial by Aberth-Ehrlich iteration."""
    if not isinstance(f, UnivPoly):
        f = UnivPoly(f)
    f = UnivPoly([QQ(c) for c in f.coeffs])
    n = f.degree()
    if n < 1:
        return []
    g = poly_gcd(f, f.derivative())
    if g.degree() > 0:
        raise ValueError(f"poly_roots needs a squarefree input; gcd(f, f') = {g.coeffs}")
    with mpmath.workdps(precision + 15):
        lc = _mpf(f.lc())
        c = [_mpf(x) / lc for x in f.coeffs]          # monic, low -> high
        dc = [c[i] * i for i in range(1, n + 1)]
        radius = 1 + max(abs(x) for x in c[:-1]) if n > 0 else 1
        # Fujiwara-style bound is tighter; a perturbed circle of that radius starts Aberth
        radius = 2 * max(abs(c[n - k]) ** (mpmath.mpf(1) / k) for k in range(1, n + 1)) or mpmath.mpf(1)
        z = [radius * mpmath.expj(2 * mpmath.pi * k / n + mpmath.mpf("0.4")) for k in range(n)]
        eps = mpmath.mpf(10) ** (-(precision + 5))

        def horner(cs, x):
            acc = mpmath.mpc(0)
            for a in reversed(cs):
                acc = acc * x + a
            return acc

        for _ in range(maxsteps):
            done = True
            for k in range(n):
                zk = z[k]
                p = horner(c, zk)
                if p == 0:
                    continue
                w = p / horner(dc, zk)
                s = mpmath.fsum(1 / (zk - z[j]) for j in range(n) if j != k)
                step = w / (1 - w * s)
                z[k] = zk - step
                if abs(step) > eps * max(1, abs(z[k])):
                    done = False
            if done:
                break
        else:
            log.warning("Aberth iteration hit the step cap at degree %d", n)
    with mpmath.workdps(precision):
        return [+x for x in z]


def _sturm_real_root_count(f: UnivPoly) -> int:
    """Number of distinct real roots of a rational polynomial (Sturm sequence)."""
    from .exact.univariate import poly_divmod
    seq = [f, f.derivative()]
    while seq[-1].degree() > 0:
        r = poly_divmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(-r)

    def sign_changes(vals):
        vals = [v for v in vals if v != 0]
        return sum(1 for a, b in zip(vals, vals[1:]) if (a > 0) != (b > 0))

    at_pos = [p.lc() for p in seq]
    at_neg = [p.lc() * (-1) ** p.degree() for p in seq]
    return sign_changes(at_neg) - sign_changes(at_pos)


@dataclass
class EigenPair:
    value: object
    vector: list
    residual: object
    clustered: bool = False
    converged: bool = True


def eigenpairs(M: Sequence[Sequence], precision: int = 50, maxiter: int = 60) -> list[EigenPair]:
    """Eigenpairs of an exact rational matrix.

    A double-precision QR eigensolve provides starting pairs; each pair is then refined
    by shifted inverse iteration against the exact matrix at `precision` digits.
    Refinement failures are flagged per pair.
    """
    n = len(M)
    Mf = np.array([[float(QQ(x)) for x in row] for row in M], dtype=float)
    vals, vecs = np.linalg.eig(Mf)
    scale = max(1.0, float(np.max(np.abs(vals))))
    out = []
    with mpmath.workdps(precision + 10):
        A = mpmath.matrix([[_mpf(x) for x in row] for row in M])
        tol = mpmath.mpf(10) ** (-precision)
        for idx in range(n):
            lam = mpmath.mpc(complex(vals[idx]))
            v = mpmath.matrix([mpmath.mpc(complex(x)) for x in vecs[:, idx]])
            k = max(range(n), key=lambda i: abs(v[i]))
            v = v / v[k]
            clustered = bool(np.sum(np.abs(vals - vals[idx]) < 1e-6 * scale) > 1)
            converged = False
            for _ in range(maxiter):
                try:
                    y = mpmath.lu_solve(A - lam * mpmath.eye(n), v)
                except ZeroDivisionError:
                    converged = True
                    break
                step = 1 / y[k]
                lam = lam + step
                v = y * step
                if abs(step) <= tol * max(1, abs(lam)):
                    converged = True
                    break
            r = A * v - lam * v
            res = max(abs(x) for x in r)
            out.append(EigenPair(+lam, [+x for x in v], res, clustered, converged))
    return out


def lll_reduce(basis: Sequence[Sequence[int]], delta=mpq(99, 100)) -> list[list]:
    """LLL reduction of integer row vectors with exact rational Gram-Schmidt."""
    B = [[mpz(x) for x in row] for row in basis]
    n = len(B)

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def gram_schmidt():
        Bs, mu, nrm = [], [[mpq(0)] * n for _ in range(n)], []
        for i in range(n):
            v = [mpq(x) for x in B[i]]
            for j in range(i):
                mu[i][j] = mpq(dot(B[i], Bs[j])) / nrm[j] if nrm[j] else mpq(0)
                v = [a - mu[i][j] * b for a, b in zip(v, Bs[j])]
            Bs.append(v)
            nrm.append(dot(v, v))
        return Bs, mu, nrm

    Bs, mu, nrm = gram_schmidt()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = int(mpq(2 * mu[k][j] + 1) // 2)
            if q:
                B[k] = [a - q * b for a, b in zip(B[k], B[j])]
                for i in range(j):
                    mu[k][i] -= q * mu[j][i]
                mu[k][j] -= q
        if nrm[k] >= (delta - mu[k][k - 1] ** 2) * nrm[k - 1]:
            k += 1
        else:
            B[k], B[k - 1] = B[k - 1], B[k]
            Bs, mu, nrm = gram_schmidt()
            k = max(k - 1, 1)
    return [[int(x) for x in row] for row in B]


def integer_relation(x: Sequence, precision: int = DEFAULT_PRECISION,
                     height: int = DEFAULT_HEIGHT) -> list[int] | None:
    """Short integer vector n with sum n_i x_i ~ 0, or None.

    The lattice is [I | N*x] with N = 10^(precision-10); a reduced row qualifies when
    |sum n_i x_i| < 10^(-precision/2) and max |n_i| <= height.
    """
    m = len(x)
    if m < 2:
        raise ValueError("integer_relation needs at least two numbers")
    with mpmath.workdps(precision + 20):
        xs = [mpmath.mpf(v) if not isinstance(v, mpmath.mpc) else mpmath.re(v) for v in x]
        N = mpmath.mpf(10) ** (precision - 10)
        rows = []
        for i in range(m):
            row = [0] * m
            row[i] = 1
            rows.append(row + [int(mpmath.nint(N * xs[i]))])
        red = lll_reduce(rows)
        thresh = mpmath.mpf(10) ** (-(precision // 2))
        best = None
        for row in red:
            n = row[:m]
            if not any(n) or max(abs(v) for v in n) > height:
                continue
            if abs(mpmath.fsum(a * b for a, b in zip(n, xs))) >= thresh:
                continue
            if best is None or max(map(abs, n)) < max(map(abs, best)):
                best = n
    if best is None:
        return None
    first = next(v for v in best if v)
    return [-v for v in best] if first < 0 else best


def newton_refine(F: Callable, J: Callable, x0: Sequence, precision: int,
                  maxiter: int = 200) -> tuple[list, bool]:
    """Multivariate Newton iteration for F(x) = 0 at the given precision."""
    with mpmath.workdps(precision + 15):
        x = mpmath.matrix([mpmath.mpc(v) for v in x0])
        tol = mpmath.mpf(10) ** (-(precision + 5))
        ok = False
        for _ in range(maxiter):
            fx = mpmath.matrix(F(list(x)))
            try:
                dx = mpmath.lu_solve(mpmath.matrix(J(list(x))), fx)
            except ZeroDivisionError:
                break
            x = x - dx
            size = max(abs(v) for v in x) or 1
            if max(abs(v) for v in dx) <= tol * max(1, size):
                ok = True
                break
        return [+v for v in x], ok
