"""Exact sparse elimination and fraction-free determinants."""
from __future__ import annotations

from typing import Sequence

from .rational import QQ


class SingularSystemError(ArithmeticError):
    pass


class InconsistentSystemError(ArithmeticError):
    pass


class SparseSystem:
    """Gauss-Jordan factorization of a sparse rational matrix, reused across right-hand sides.

    ``columns[j]`` maps row index -> nonzero coefficient. Pivots are chosen column by
    column (sparsest column first); within a column the sparsest row wins, ties broken
    by larger magnitude and then lower index, so the factorization is deterministic.
    Row operations are recorded and replayed on each right-hand side.
    """

    def __init__(self, columns: Sequence[dict], nrows: int):
        ncols = len(columns)
        rows: list[dict] = [dict() for _ in range(nrows)]
        colrows: list[set] = [set() for _ in range(ncols)]
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows[i][j] = QQ(v)
                    colrows[j].add(i)
        self.nrows, self.ncols = nrows, ncols
        self.ops: list[tuple[int, int, object]] = []
        self.pivots: list[tuple[int, int, object]] = []
        pivoted: set[int] = set()
        remaining = set(range(ncols))
        while remaining:
            j = min(remaining, key=lambda c: (len(colrows[c]), c))
            remaining.discard(j)
            cand = [i for i in colrows[j] if i not in pivoted]
            if not cand:
                raise SingularSystemError(f"column {j} is linearly dependent on earlier columns")
            i = min(cand, key=lambda r: (len(rows[r]), -abs(rows[r][j]), r))
            piv = rows[i][j]
            pivoted.add(i)
            self.pivots.append((j, i, piv))
            prow = rows[i]
            for r in sorted(colrows[j]):
                if r == i:
                    continue
                rr = rows[r]
                f = rr[j] / piv
                self.ops.append((r, i, f))
                for c, v in prow.items():
                    nv = rr.get(c, 0) - f * v
                    if nv:
                        if c not in rr:
                            colrows[c].add(r)
                        rr[c] = nv
                    elif c in rr:
                        del rr[c]
                        colrows[c].discard(r)
        self.free_rows = [i for i in range(nrows) if i not in pivoted]

    def solve(self, rhs: dict) -> dict:
        """Solve A x = rhs (rhs as {row: value}); returns {col: value} for nonzero x."""
        y = {i: QQ(v) for i, v in rhs.items() if v}
        for r, i, f in self.ops:
            yi = y.get(i)
            if yi is not None:
                v = y.get(r, 0) - f * yi
                if v:
                    y[r] = v
                else:
                    y.pop(r, None)
        for i in self.free_rows:
            if y.get(i):
                raise InconsistentSystemError("right-hand side is not in the column span")
        out = {}
        for j, i, piv in self.pivots:
            v = y.get(i)
            if v:
                out[j] = v / piv
        return out


def bareiss_det(M: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination over an integral domain.

    Entries may be integers, rationals or SparsePoly; divisions are exact.
    """
    n = len(M)
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not A[k][k]:
            for r in range(k + 1, n):
                if A[r][k]:
                    A[k], A[r] = A[r], A[k]
                    sign = -sign
                    break
            else:
                return A[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = _div(num, prev)
        prev = A[k][k]
    return A[n - 1][n - 1] * sign


def _div(x, y):
    if isinstance(y, int) and y == 1:
        return x
    if hasattr(x, "divexact"):
        return x.divexact(y) if hasattr(y, "divexact") else x / y
    return x / y


def rational_nullspace(rows: Sequence[Sequence]) -> list[list]:
    """Basis of {v : rows * v = 0} over a field (entries support + - * /)."""
    m = [list(r) for r in rows]
    n = len(m[0]) if m else 0
    pivcols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c] if not hasattr(m[r][c], "inverse") else m[r][c].inverse()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivcols.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivcols]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivcols):
            v[pc] = -m[i][fc]
        basis.append(v)
    return basis


def mat_mul(A, B, zero):
    n, m, p = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(p):
            acc = zero
            for k in range(m):
                a = Ai[k]
                if a:
                    b = B[k][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        out.append(row)
    return out


def charpoly(M, zero, one) -> list:
    """det(x I - M) as a coefficient list (low -> high), Faddeev-LeVerrier over a Q-algebra."""
    n = len(M)
    coeffs = [None] * (n + 1)
    coeffs[n] = one
    Mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        AM = mat_mul(M, Mk, zero)
        c_prev = coeffs[n - k + 1]
        Mk = [[AM[i][j] + (c_prev if i == j else zero) for j in range(n)] for i in range(n)]
        AMk = mat_mul(M, Mk, zero)
        tr = zero
        for i in range(n):
            tr = tr + AMk[i][i]
        coeffs[n - k] = tr.scale(QQ(-1) / k) if hasattr(tr, "scale") else -tr / k
    return coeffs
