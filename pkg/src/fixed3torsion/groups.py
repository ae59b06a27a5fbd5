"""The complex reflection groups as explicit matrices over Q(w)."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

import numpy as np

from .exact.linalg import rational_nullspace
from .exact.rational import OMEGA, OMEGA_BAR, QQ, SQRT_M3, Cyclotomic
from .exact.sparse import SparsePoly


class GroupStructureError(RuntimeError):
    pass


class CycMatrix:
    """Square matrix with Cyclotomic entries (immutable, hashable)."""

    __slots__ = ("rows", "_key")

    def __init__(self, rows: Sequence[Sequence]):
        self.rows = tuple(tuple(Cyclotomic._coerce(x) for x in r) for r in rows)
        self._key = None

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, n: int) -> "CycMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        n = self.n
        cols = list(zip(*other.rows))
        return CycMatrix([[sum((a * b for a, b in zip(r, c)), Cyclotomic()) for c in cols]
                          for r in self.rows])

    def __pow__(self, k: int) -> "CycMatrix":
        out = CycMatrix.identity(self.n)
        for _ in range(k):
            out = out @ self
        return out

    def conj(self) -> "CycMatrix":
        return CycMatrix([[x.conj() for x in r] for r in self.rows])

    def transpose(self) -> "CycMatrix":
        return CycMatrix(list(zip(*self.rows)))

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def det(self) -> Cyclotomic:
        m = [list(r) for r in self.rows]
        n = len(m)
        det = Cyclotomic(1)
        for c in range(n):
            p = next((i for i in range(c, n) if m[i][c]), None)
            if p is None:
                return Cyclotomic(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if m[i][c]:
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det

    def order(self, cap: int = 10 ** 6) -> int:
        ident = CycMatrix.identity(self.n)
        g, k = self, 1
        while g != ident:
            g = g @ self
            k += 1
            if k > cap:
                raise GroupStructureError("element order exceeds cap")
        return k

    def key(self) -> tuple:
        if self._key is None:
            self._key = tuple((x.re, x.wc) for r in self.rows for x in r)
        return self._key

    def __eq__(self, other):
        return isinstance(other, CycMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"CycMatrix({[list(r) for r in self.rows]!r})"


def reflection_generators(case: str) -> list[CycMatrix]:
    """Generators for genus one ('g1': 2x2) or genus two ('g2': 4x4)."""
    w, wb = OMEGA, OMEGA_BAR
    if case == "g1":
        g1 = CycMatrix([[wb, wb - 1], [0, 1]])
        g2 = CycMatrix([[1, 0], [(w - 1) / 3, w]])
        return [g1, g2]
    if case == "g2":
        al = w / SQRT_M3
        ab = al.conj()
        g1 = CycMatrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, w, 0], [0, 0, 0, 1]])
        g2 = CycMatrix([[al, -ab, -ab, 0], [-ab, al, -ab, 0], [-ab, -ab, al, 0], [0, 0, 0, 1]])
        g3 = CycMatrix([[1, 0, 0, 0], [0, w, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
        g4 = CycMatrix([[al, ab, 0, ab], [ab, al, 0, -ab], [0, 0, 1, 0], [ab, -ab, 0, al]])
        return [g1, g2, g3, g4]
    raise ValueError(f"unknown case {case!r}")


@dataclass
class GroupClosure:
    """Elements stored as integer arrays: element k = (re[k] + wc[k]*w) / den."""

    re: np.ndarray
    wc: np.ndarray
    den: int

    def __len__(self) -> int:
        return self.re.shape[0]

    @property
    def order(self) -> int:
        return len(self)

    def element(self, k: int) -> CycMatrix:
        d = self.den
        n = self.re.shape[1]
        return CycMatrix([[Cyclotomic(QQ(int(self.re[k, i, j])) / d, QQ(int(self.wc[k, i, j])) / d)
                           for j in range(n)] for i in range(n)])

    def __iter__(self):
        for k in range(len(self)):
            yield self.element(k)


def _encode(g: CycMatrix, den: int):
    n = g.n
    re = np.zeros((n, n), dtype=np.int64)
    wc = np.zeros((n, n), dtype=np.int64)
    for i, r in enumerate(g.rows):
        for j, x in enumerate(r):
            a, b = x.re * den, x.wc * den
            if a.denominator != 1 or b.denominator != 1:
                raise ValueError("denominator too small")
            re[i, j], wc[i, j] = int(a), int(b)
    return re, wc


def closure(gens: Sequence[CycMatrix], cap: int = 200000, den: int | None = None) -> GroupClosure:
    """Breadth-first closure of the generated group; raises when more than `cap` elements appear."""
    if den is None:
        from math import lcm
        den = 1
        for g in gens:
            for r in g.rows:
                for x in r:
                    den = lcm(den, int(x.re.denominator), int(x.wc.denominator))
    try:
        enc = [_encode(g, den) for g in gens]
    except ValueError:
        return closure(gens, cap, den * 3)
    n = gens[0].n
    ident = np.eye(n, dtype=np.int64) * den
    zero = np.zeros((n, n), dtype=np.int64)
    seen = {ident.tobytes() + zero.tobytes()}
    all_re, all_wc = [ident[None]], [zero[None]]
    fr_re, fr_wc = ident[None], zero[None]
    while len(fr_re):
        new_re, new_wc = [], []
        for gre, gwc in enc:
            rr = fr_re @ gre
            ww = fr_wc @ gwc
            rw = fr_re @ gwc + fr_wc @ gre
            pre = rr - ww
            pwc = rw - ww
            if np.any(pre % den) or np.any(pwc % den):
                return closure(gens, cap, den * 3)
            pre //= den
            pwc //= den
            for k in range(pre.shape[0]):
                key = pre[k].tobytes() + pwc[k].tobytes()
                if key not in seen:
                    seen.add(key)
                    new_re.append(pre[k])
                    new_wc.append(pwc[k])
                    if len(seen) > cap:
                        raise GroupStructureError(f"closure exceeded cap {cap}; wrong generators?")
        if not new_re:
            break
        fr_re, fr_wc = np.array(new_re), np.array(new_wc)
        all_re.append(fr_re)
        all_wc.append(fr_wc)
    return GroupClosure(np.concatenate(all_re), np.concatenate(all_wc), den)


def act_poly(g: CycMatrix, f: SparsePoly) -> SparsePoly:
    """(g.f)(x) = f(g x): variable i is replaced by sum_j g[i][j] x_j."""
    if len(f.vars) != g.n:
        raise ValueError(f"polynomial arity {len(f.vars)} != matrix size {g.n}")
    xs = SparsePoly.gens(f.vars, f.weights)
    images = []
    for row in g.rows:
        img = f.zero()
        for x, c in zip(xs, row):
            if c:
                img = img + x.to_cyclotomic().scale(c)
        images.append(img)
    return f.to_cyclotomic().compose(images)


def act_via(g: CycMatrix, f: SparsePoly, definitions: Sequence[SparsePoly]) -> SparsePoly:
    """Act on f(y_1..y_k) where y_i = definitions[i] are polynomials in the matrix variables."""
    imgs = [act_poly(g, d) for d in definitions]
    return f.to_cyclotomic().compose(imgs)


def dual_fixed_vector(gens: Sequence[CycMatrix]) -> list:
    """The line of vectors v with g v = v for every generator.

    A vector fixed this way turns gradients of invariants into H-invariant polynomials:
    (v . grad f)(g x) = (g^{-1} v) . grad f(x). Raises unless the fixed space is a line.
    """
    n = gens[0].n
    ident = CycMatrix.identity(n)
    rows = []
    for g in gens:
        rows += [list(r) for r in (g - ident).rows]
    basis = rational_nullspace(rows)
    if len(basis) != 1:
        raise GroupStructureError(f"fixed space has dimension {len(basis)}, expected 1")
    v = [Cyclotomic._coerce(x) for x in basis[0]]
    if all(x.is_rational() for x in v):
        from math import lcm
        den = 1
        for x in v:
            den = lcm(den, int(x.re.denominator))
        ints = [int(x.re * den) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        ints = [x // g for x in ints]
        if next(x for x in ints if x) < 0:
            ints = [-x for x in ints]
        return [QQ(x) for x in ints]
    return v
