"""Genus-two invariants, covariants, contravariants and multiplication matrices.

Q[p, q, r, z] (weights 6, 9, 12, 1) is free of rank 240 over Q[a, b, c, d]
(weights 12, 18, 24, 30) with basis p^i q^j r^k z^l, i, j, k < 2, l < 30,
indexed by 120 i + 60 j + 30 k + l. Multiplication by a covariant or
contravariant of degree e is a 240 x 240 matrix over Q[a, b, c, d]; the entry
in row R, column C is homogeneous of degree e + wt(C) - wt(R).

Matrices are expensive to build and are cached on disk as text (see
``MulMatrix.to_text``); the cache directory is ``$FIXED3TORSION_CACHE`` or
``~/.cache/fixed3torsion``.
"""
from __future__ import annotations

import hashlib
import logging
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from .exact import QQ, GradedModule, GradedModuleSpec, SparsePoly
from .exact.graded import NotInModuleError

log = logging.getLogger(__name__)

PQRZ = ("p", "q", "r", "z")
PQRZ_WEIGHTS = (6, 9, 12, 1)
Z4 = ("z1", "z2", "z3", "z")
ABCD = ("a", "b", "c", "d")
ABCD_WEIGHTS = (12, 18, 24, 30)
COVARIANT_DEGREES = (1, 7, 13, 19)
CONTRAVARIANT_DEGREES = (11, 17, 23, 29)
SCALES = (2 ** 4 * 3 ** 7 * 5, 2 ** 6 * 3 ** 9 * 5 ** 2, 2 ** 8 * 3 ** 12 * 5 ** 3,
          2 ** 10 * 3 ** 16 * 5 ** 5)
FORMAT_HEADER = "G2TORSION-MATRIX v2"
FORMAT_VERSION = "fixed3torsion-matrix-2"
CACHE_ENV = "FIXED3TORSION_CACHE"
M1_UNIT_COLUMNS = 232  # z * (basis element) is again a basis element unless z-degree is 29


class CacheMissingError(FileNotFoundError):
    """A multiplication matrix was requested that has not been built."""


def _pqrz():
    return SparsePoly.gens(PQRZ, PQRZ_WEIGHTS)


def _invariant_bodies() -> tuple[SparsePoly, ...]:
    """The four scaled invariant definitions 2^.3^.5^. * (a, b, c, d) in Q[p, q, r, z].

    The q r z^9 term of the last one carries -945000: with +945000 the polynomial
    is not invariant under g4 (checked exactly in the test suite).
    """
    p, q, r, z = _pqrz()
    A = -p ** 2 - 5 * r + 1320 * q * z ** 3 - 132 * p * z ** 6 - 6 * z ** 12
    B = (p ** 3 - 400 * q ** 2 - 5 * p * r - 680 * p * q * z ** 3 + 323 * p ** 2 * z ** 6
         - 255 * r * z ** 6 - 7480 * q * z ** 9 + 68 * p * z ** 12 - 4 * z ** 18)
    C = (2 * p ** 4 - 800 * p * q ** 2 - 5 * p ** 2 * r + 320 * p ** 2 * q * z ** 3
         - 3000 * q * r * z ** 3 - 722 * p ** 3 * z ** 6 + 175200 * q ** 2 * z ** 6
         + 990 * p * r * z ** 6 + 33040 * p * q * z ** 9 - 953 * p ** 2 * z ** 12
         + 3495 * r * z ** 12 + 15720 * q * z ** 15 + 268 * p * z ** 18 - 3 * z ** 24)
    D = (13 * p ** 5 - 6000 * p ** 2 * q ** 2 - 25 * p ** 3 * r + 21600 * p ** 3 * q * z ** 3
         - 9600000 * q ** 3 * z ** 3 - 45000 * p * q * r * z ** 3 + 11790 * p ** 4 * z ** 6
         - 4572000 * p * q ** 2 * z ** 6 - 37575 * p ** 2 * r * z ** 6 + 28125 * r ** 2 * z ** 6
         - 247200 * p ** 2 * q * z ** 9 - 945000 * q * r * z ** 9 + 37155 * p ** 3 * z ** 12
         + 234000 * q ** 2 * z ** 12 - 150075 * p * r * z ** 12 - 214200 * p * q * z ** 15
         + 30855 * p ** 2 * z ** 18 - 143775 * r * z ** 18 + 354600 * q * z ** 21
         + 2340 * p * z ** 24 - 12 * z ** 30)
    return A, B, C, D


@dataclass(frozen=True)
class InvariantDataG2:
    p: SparsePoly  # in (z1, z2, z3, z)
    q: SparsePoly
    r: SparsePoly
    a: SparsePoly  # in (p, q, r, z)
    b: SparsePoly
    c: SparsePoly
    d: SparsePoly

    @property
    def pqrz_images(self) -> tuple[SparsePoly, ...]:
        z = SparsePoly.gens(Z4)[3]
        return self.p, self.q, self.r, z

    def expanded(self, name: str) -> SparsePoly:
        """An invariant of degree 12..30 written out in (z1, z2, z3, z)."""
        return getattr(self, name).compose(self.pqrz_images)


@lru_cache(maxsize=None)
def build_invariants() -> InvariantDataG2:
    z1, z2, z3, _ = SparsePoly.gens(Z4)
    c1, c2, c3 = z1 ** 3, z2 ** 3, z3 ** 3
    p = z1 ** 6 + z2 ** 6 + z3 ** 6 - 10 * (c2 * c3 + c2 * c1 + c3 * c1)
    # Sign chosen so that a, b, c, d below are invariant under g4;
    # the opposite sign (c2 - c3 as last factor) is the other orientation of q.
    q = (c1 - c2) * (c1 - c3) * (c3 - c2)
    s = c1 + c2 + c3
    r = s * (s ** 3 + 216 * c1 * c2 * c3)
    a, b, c, d = (body / k for body, k in zip(_invariant_bodies(), SCALES))
    return InvariantDataG2(p, q, r, a, b, c, d)


@dataclass(frozen=True)
class CovariantSetG2:
    alpha: tuple[SparsePoly, ...]  # degrees 1, 7, 13, 19
    beta: tuple[SparsePoly, ...]  # degrees 11, 17, 23, 29

    def get(self, kind: str, degree: int) -> SparsePoly:
        if kind == "covariant":
            return self.alpha[COVARIANT_DEGREES.index(degree)]
        if kind == "contravariant":
            return self.beta[CONTRAVARIANT_DEGREES.index(degree)]
        raise ValueError(f"unknown kind {kind!r}")


def covariants() -> tuple[SparsePoly, ...]:
    p, q, r, z = _pqrz()
    a1 = z
    a7 = (7 * p * z - 3 * z ** 7) / (2 ** 2 * 3 ** 3 * 5)
    a13 = ((11 * r - 3 * p ** 2) * z + 216 * q * z ** 4 + 72 * p * z ** 7) / (2 ** 4 * 3 ** 6)
    # 2**4 rather than 2**3: this normalization makes the modular example
    # (12/5, ...) -> (2**7/5, ...) come out at v = 1/20.
    a19 = ((p ** 3 - p * r - 468 * q ** 2) * z - 24 * p * q * z ** 4 + z ** 7 * (66 * r - 6 * p ** 2)
           - 288 * q * z ** 10 - 12 * p * z ** 13) / (2 ** 4 * 3 ** 10)
    return a1, a7, a13, a19


def _normalize(f: SparsePoly) -> SparsePoly:
    return f.primitive()[1]


def contravariants() -> tuple[SparsePoly, ...]:
    """beta_{11,17,23,29}: the H-fixed directional derivative of a, b, c, d, primitive integral.

    The H-fixed vector is e_4, so the directional derivative is d/dz with p, q, r held fixed.
    """
    from .groups import dual_fixed_vector, reflection_generators
    v = dual_fixed_vector(reflection_generators("g2")[:3])
    if [QQ(x) if not hasattr(x, "re") else x.re for x in v] != [0, 0, 0, 1]:
        raise NotInModuleError(f"unexpected H-fixed vector {v}")
    inv = build_invariants()
    return tuple(_normalize(getattr(inv, n).diff("z")) for n in ABCD)


def contravariants_by_gradient() -> tuple[SparsePoly, ...]:
    """Same contravariants, computed through the general recipe in (z1, z2, z3, z).

    Dot the gradient of each expanded invariant with the H-fixed vector, then
    rewrite the resulting H-invariant in Q[p, q, r, z].
    """
    from .groups import dual_fixed_vector, reflection_generators
    v = dual_fixed_vector(reflection_generators("g2")[:3])
    inv = build_invariants()
    spec = GradedModuleSpec(
        ambient_vars=Z4, ambient_weights=(1, 1, 1, 1),
        generator_names=PQRZ, generators=inv.pqrz_images,
        basis=(inv.p.one(),))
    mod = GradedModule(spec)
    out = []
    for name in ABCD:
        f = inv.expanded(name)
        grad = f.zero()
        for var, coef in zip(Z4, v):
            if coef:
                grad = grad + f.diff(var) * coef
        red = mod.reduce(grad)
        out.append(_normalize(red[0].with_weights(PQRZ_WEIGHTS)))
    return tuple(out)


@lru_cache(maxsize=None)
def covariant_set() -> CovariantSetG2:
    return CovariantSetG2(covariants(), contravariants())


# -- the 240-element basis -------------------------------------------------

@dataclass(frozen=True)
class Basis240:
    exponents: tuple[tuple[int, int, int, int], ...]

    @classmethod
    def standard(cls) -> "Basis240":
        return cls(tuple((i, j, k, l) for i in range(2) for j in range(2)
                         for k in range(2) for l in range(30)))

    @staticmethod
    def index(i: int, j: int, k: int, l: int) -> int:
        return 120 * i + 60 * j + 30 * k + l

    def weight(self, idx: int) -> int:
        i, j, k, l = self.exponents[idx]
        return 6 * i + 9 * j + 12 * k + l

    def monomial(self, idx: int) -> SparsePoly:
        return SparsePoly.monomial(PQRZ, self.exponents[idx], 1, PQRZ_WEIGHTS)

    def __len__(self):
        return len(self.exponents)


BASIS = Basis240.standard()


@lru_cache(maxsize=None)
def module240() -> GradedModule:
    inv = build_invariants()
    spec = GradedModuleSpec(
        ambient_vars=PQRZ, ambient_weights=PQRZ_WEIGHTS,
        generator_names=ABCD, generators=(inv.a, inv.b, inv.c, inv.d),
        basis=tuple(BASIS.monomial(i) for i in range(len(BASIS))),
        basis_labels=tuple("p^%d q^%d r^%d z^%d" % e for e in BASIS.exponents))
    return GradedModule(spec)


def reduce240(f: SparsePoly) -> dict[int, SparsePoly]:
    """Coordinates of a homogeneous f in Q[p,q,r,z] on the 240-element basis."""
    return module240().reduce(f)


# -- multiplication matrices -----------------------------------------------

def _entry_ring_zero():
    return SparsePoly(ABCD, {}, ABCD_WEIGHTS)


@dataclass
class MulMatrix:
    kind: str
    degree: int
    entries: dict  # (row, col) -> SparsePoly in (a, b, c, d)

    def to_text(self) -> str:
        lines = [FORMAT_HEADER, f"kind {self.kind} degree {self.degree}",
                 "vars a b c d weights 12 18 24 30", "basis pqrz 2 2 2 30"]
        for (row, col) in sorted(self.entries):
            f = self.entries[(row, col)]
            body = f.to_lines()
            lines.append(f"{row} {col} {len(body)}")
            lines.extend(body)
        text = "\n".join(lines) + "\n"
        return text + f"sha256 {hashlib.sha256(text.encode()).hexdigest()}\n"

    @classmethod
    def from_text(cls, text: str) -> "MulMatrix":
        body, _, trailer = text.rstrip("\n").rpartition("\n")
        if not trailer.startswith("sha256 "):
            raise ValueError("missing checksum line")
        if hashlib.sha256((body + "\n").encode()).hexdigest() != trailer.split()[1]:
            raise ValueError("checksum mismatch")
        lines = body.splitlines()
        if not lines or lines[0] != FORMAT_HEADER:
            raise ValueError("not a multiplication-matrix file")
        _, kind, _, degree = lines[1].split()
        if lines[2].split() != "vars a b c d weights 12 18 24 30".split():
            raise ValueError(f"unexpected variable line {lines[2]!r}")
        if lines[3].split() != "basis pqrz 2 2 2 30".split():
            raise ValueError(f"unexpected basis line {lines[3]!r}")
        entries = {}
        i = 4
        while i < len(lines):
            if not lines[i].strip():
                i += 1
                continue
            row, col, n = map(int, lines[i].split())
            entries[(row, col)] = SparsePoly.from_lines(ABCD, lines[i + 1:i + 1 + n], ABCD_WEIGHTS)
            i += 1 + n
        return cls(kind, int(degree), entries)

    def check_degrees(self) -> bool:
        for (row, col), f in self.entries.items():
            want = self.degree + BASIS.weight(col) - BASIS.weight(row)
            if not f or f.weighted_degrees() != {want}:
                return False
        return True

    def unit_columns(self) -> int:
        cols: dict[int, list] = {}
        for (row, col), f in self.entries.items():
            cols.setdefault(col, []).append(f)
        return sum(1 for fs in cols.values() if len(fs) == 1 and fs[0] == 1)

    def column(self, col: int) -> dict[int, SparsePoly]:
        return {r: f for (r, c), f in self.entries.items() if c == col}

    def specialize(self, abcd: Sequence) -> dict:
        """Entry-wise evaluation at rational (a, b, c, d): {(row, col): Rational}."""
        vals = [QQ(x) for x in abcd]
        out = {}
        for key, f in self.entries.items():
            v = f.evaluate(vals)
            if v:
                out[key] = QQ(v)
        return out


def cache_dir(override: str | os.PathLike | None = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path.home() / ".cache" / "fixed3torsion"


@lru_cache(maxsize=None)
def definitions_hash() -> str:
    """Hash over the serialized definitions, the basis order and the format version."""
    h = hashlib.sha256(FORMAT_VERSION.encode())
    inv = build_invariants()
    cs = covariant_set()
    for f in (inv.a, inv.b, inv.c, inv.d, *cs.alpha, *cs.beta):
        h.update("\n".join(f.to_lines()).encode())
        h.update(b"|")
    for e in BASIS.exponents:
        h.update(bytes(e))
    return h.hexdigest()[:16]


def matrix_path(kind: str, degree: int, directory=None) -> Path:
    return cache_dir(directory) / f"{kind}-{degree:02d}-{definitions_hash()}.txt"


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def compute_mul_matrix(kind: str, degree: int, columns: Iterable[int] | None = None) -> MulMatrix:
    """Build (some columns of) M(degree) by reducing generator * basis monomial."""
    gen = covariant_set().get(kind, degree)
    mod = module240()
    entries = {}
    for col in (range(len(BASIS)) if columns is None else columns):
        try:
            red = mod.reduce(gen * BASIS.monomial(col))
        except NotInModuleError as exc:
            raise NotInModuleError(f"{kind} {degree}: column {col} failed to reduce: {exc}") from exc
        for row, f in red.items():
            entries[(row, col)] = f
    return MulMatrix(kind, degree, entries)


_LOADED: dict = {}


def mul_matrix(degree: int, kind: str = "covariant", directory=None, build: bool = True) -> MulMatrix:
    """Cached M(degree): loaded from disk when present, otherwise built and written."""
    path = matrix_path(kind, degree, directory)
    hit = _LOADED.get(path)
    if hit is not None:
        return hit
    if path.exists():
        M = MulMatrix.from_text(path.read_text(encoding="utf-8"))
    elif not build:
        raise CacheMissingError(
            f"{path} missing; run `fixed3torsion g2 build-matrices{' --star' if kind != 'covariant' else ''}`")
    else:
        log.info("building %s matrix of degree %d", kind, degree)
        M = compute_mul_matrix(kind, degree)
        _atomic_write(path, M.to_text())
    _LOADED[path] = M
    return M


def degrees_for(kind: str) -> tuple[int, ...]:
    return COVARIANT_DEGREES if kind == "covariant" else CONTRAVARIANT_DEGREES


def build_all(kinds: Sequence[str] = ("covariant", "contravariant"), directory=None,
              progress=None) -> list[Path]:
    """Build (or load) every cached matrix; a second run only reads files."""
    if isinstance(kinds, str):
        kinds = (kinds,)
    out = []
    for kind in kinds:
        for e in degrees_for(kind):
            if progress:
                progress(f"{kind} M({e})")
            mul_matrix(e, kind, directory)
            out.append(matrix_path(kind, e, directory))
    return out


def verify_cache(directory=None) -> dict[str, str]:
    """Status per expected file: 'ok', 'missing', or 'corrupt: <reason>'."""
    status = {}
    for kind in ("covariant", "contravariant"):
        for e in degrees_for(kind):
            path = matrix_path(kind, e, directory)
            if not path.exists():
                status[path.name] = "missing"
                continue
            try:
                M = MulMatrix.from_text(path.read_text(encoding="utf-8"))
                if M.kind != kind or M.degree != e:
                    status[path.name] = "corrupt: header mismatch"
                elif not M.check_degrees():
                    status[path.name] = "corrupt: inhomogeneous entry"
                elif kind == "covariant" and e == 1 and M.unit_columns() != M1_UNIT_COLUMNS:
                    status[path.name] = "corrupt: M(1) is not a shift on the non-top basis"
                else:
                    status[path.name] = "ok"
            except (ValueError, IndexError) as exc:
                status[path.name] = f"corrupt: {exc}"
    return status


def purge_cache(directory=None, stale_only: bool = False) -> list[Path]:
    """Remove versioned matrix files; with stale_only, keep those of the current hash."""
    d = cache_dir(directory)
    current = definitions_hash()
    removed = []
    if d.exists():
        for path in d.glob("*.txt"):
            if stale_only and path.stem.endswith(current):
                continue
            if path.name.split("-")[0] in ("covariant", "contravariant"):
                path.unlink()
                removed.append(path)
    _LOADED.clear()
    return removed
