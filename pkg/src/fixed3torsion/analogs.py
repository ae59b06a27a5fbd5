"""The p = 2 analog for odd-degree hyperelliptic curves, and term counters.

For f(x) = x^n + c_2 x^(n-2) + ... + c_n let alpha_1 be its companion matrix and
alpha_j = alpha_1^j - k_j I with k_j making alpha_j traceless. The characteristic
polynomial of s_1 alpha_1 + ... + s_(n-1) alpha_(n-1) is again of the form x^n + ...
with no x^(n-1) term, and its roots are the images of the roots of f under
r -> sum s_j (r^j - k_j); in particular both curves have the same 2-torsion field.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import mpmath

from .exact import QQ, SparsePoly, UnivPoly, bareiss_det
from .numerics import poly_roots

SUPPORTED_DEGREES = (5, 7, 9)
QUINTIC_VARS = ("a", "b", "c", "d")
QUINTIC_PARAMS = ("s", "t", "u", "v")


def _names(n: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if n == 5:
        return QUINTIC_VARS, QUINTIC_PARAMS
    return tuple(f"c{k}" for k in range(2, n + 1)), tuple(f"s{j}" for j in range(1, n))


def _check_degree(n: int) -> None:
    if n not in SUPPORTED_DEGREES:
        raise ValueError(f"degree must be one of {SUPPORTED_DEGREES}, got {n}")


def companion(coeffs: Sequence, one=1) -> list[list]:
    """Companion matrix of x^n + c_2 x^(n-2) + ... + c_n, coeffs = (c_2, ..., c_n)."""
    n = len(coeffs) + 1
    zero = one * 0
    full = [zero, *coeffs]  # c_1 = 0
    M = [[zero] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = one
    for i in range(n):
        M[i][n - 1] = -full[n - 1 - i]
    return M


def _mat_mul(A, B):
    n = len(A)
    return [[sum((A[i][k] * B[k][j] for k in range(n)), A[0][0] * 0) for j in range(n)]
            for i in range(n)]


@dataclass
class TschirnhausenBasis:
    alphas: list  # alpha_1 .. alpha_(n-1)
    shifts: list  # k_1 .. k_(n-1), k_1 = 0

    @property
    def degree(self) -> int:
        return len(self.alphas) + 1


def tschirnhausen_basis(coeffs: Sequence, one=1) -> TschirnhausenBasis:
    n = len(coeffs) + 1
    C = companion(coeffs, one)
    alphas, shifts = [], []
    P = C
    for j in range(1, n):
        if j > 1:
            P = _mat_mul(P, C)
        k = sum((P[i][i] for i in range(n)), one * 0) / n if j > 1 else one * 0
        alphas.append([[P[r][c] - (k if r == c else 0) for c in range(n)] for r in range(n)])
        shifts.append(k)
    return TschirnhausenBasis(alphas, shifts)


def p2_new_coeffs(coeffs: Sequence, params: Sequence) -> tuple:
    """Coefficients (A, B, C, D, ...) of det(xI - sum s_j alpha_j), below x^(n-2).

    Works for rationals or SparsePoly inputs. The x^(n-1) coefficient vanishes and
    is checked.
    """
    n = len(coeffs) + 1
    _check_degree(n)
    if len(params) != n - 1:
        raise ValueError("need one parameter per alpha")
    sample = next((c for c in (*coeffs, *params) if isinstance(c, SparsePoly)), None)
    if sample is None:
        coeffs = [QQ(c) for c in coeffs]
        params = [QQ(s) for s in params]
        from .exact.linalg import charpoly
        basis = tschirnhausen_basis(coeffs, QQ(1))
        N = _combine(basis, params, QQ(0))
        cp = charpoly(N, QQ(0), QQ(1))
        top = cp[n - 1]
        if top:
            raise ArithmeticError("combination is not traceless")
        return tuple(cp[n - 2 - i] for i in range(n - 1))
    # symbolic: embed everything in one ring with an extra variable x
    vars_ = tuple(sample.vars) if "x" in sample.vars else (*sample.vars, "x")
    weights = tuple(sample.weights) + ((1,) if "x" not in sample.vars else ())
    lift = [c.embed(vars_, weights) if isinstance(c, SparsePoly) else SparsePoly.const(vars_, c, weights)
            for c in (*coeffs, *params)]
    cs, ps = lift[: n - 1], lift[n - 1:]
    one = SparsePoly.const(vars_, 1, weights)
    x = SparsePoly.gens(vars_, weights)[vars_.index("x")]
    basis = tschirnhausen_basis(cs, one)
    N = _combine(basis, ps, one * 0)
    det = bareiss_det([[(x if r == c else one * 0) - N[r][c] for c in range(n)] for r in range(n)])
    by_x = det.coefficients_in("x")
    zero = one * 0
    if by_x.get(n - 1, zero):
        raise ArithmeticError("combination is not traceless")
    return tuple(_drop(by_x.get(n - 2 - i, zero), "x") for i in range(n - 1))


def _drop(f: SparsePoly, var: str) -> SparsePoly:
    """Remove a variable that does not occur in f."""
    i = f.vars.index(var)
    keep = [k for k in range(len(f.vars)) if k != i]
    terms = {tuple(e[k] for k in keep): c for e, c in f.terms.items()}
    return SparsePoly([f.vars[k] for k in keep], terms, [f.weights[k] for k in keep])


def _combine(basis: TschirnhausenBasis, params, zero):
    n = basis.degree
    out = [[zero] * n for _ in range(n)]
    for s, A in zip(params, basis.alphas):
        for r in range(n):
            for c in range(n):
                out[r][c] = out[r][c] + s * A[r][c]
    return out


def symbolic_p2_coeffs(n: int = 5) -> tuple[SparsePoly, ...]:
    """(A, B, C, D) in Q[a, b, c, d, s, t, u, v] for the quintic (general n similarly).

    Weights: c_k has weight k and s_j weight 1 - j, so each output is homogeneous of
    the weight of the coefficient it replaces.
    """
    _check_degree(n)
    cn, pn = _names(n)
    vars_ = (*cn, *pn)
    weights = (*range(2, n + 1), *(1 - j for j in range(1, n)))
    gens = SparsePoly.gens(vars_, weights)
    return p2_new_coeffs(gens[: n - 1], gens[n - 1:])


def root_image_error(coeffs: Sequence, params: Sequence, precision: int = 60):
    """Max distance between the roots of the new polynomial and the images of the old roots.

    Each old root r maps to sum s_j (r^j - k_j); the two multisets are matched greedily.
    """
    n = len(coeffs) + 1
    coeffs = [QQ(c) for c in coeffs]
    params = [QQ(s) for s in params]
    new = p2_new_coeffs(coeffs, params)
    basis = tschirnhausen_basis(coeffs, QQ(1))
    old_poly = UnivPoly([*reversed(coeffs), QQ(0), QQ(1)])
    new_poly = UnivPoly([*reversed(new), QQ(0), QQ(1)])
    with mpmath.workdps(precision + 10):
        old_roots = poly_roots(old_poly, precision)
        new_roots = poly_roots(new_poly, precision)

        def mp(q):
            return mpmath.mpf(int(q.numerator)) / int(q.denominator)

        images = [sum(mp(s) * (r ** j - mp(k)) for j, (s, k) in
                      enumerate(zip(params, basis.shifts), start=1)) for r in old_roots]
        worst = mpmath.mpf(0)
        remaining = list(new_roots)
        for z in images:
            i = min(range(len(remaining)), key=lambda k: abs(remaining[k] - z))
            worst = max(worst, abs(remaining.pop(i) - z))
    assert len(images) == n
    return worst


# -- term counts ------------------------------------------------------------

@dataclass(frozen=True)
class CountSpec:
    """Monomials a^. s^. with s-degree `index` and total weight zero.

    coefficient_weights are the (positive) weights of the curve coefficients;
    parameter_weights the absolute values of the (negative) parameter weights.
    """
    coefficient_weights: tuple[int, ...]
    parameter_weights: tuple[int, ...]
    index: int

    def __post_init__(self):
        if any(w <= 0 for w in self.coefficient_weights) or any(w <= 0 for w in self.parameter_weights):
            raise ValueError("weights must be positive")
        if self.index < 0:
            raise ValueError("index must be non-negative")


PRESETS = {
    "e7": ((2, 6, 8, 10, 12, 14, 18), (1, 5, 7, 9, 11, 13, 17)),
    "e8": ((2, 8, 12, 14, 18, 20, 24, 30), (1, 7, 11, 13, 17, 19, 23, 29)),
    "g2-bigraded": ((12, 18, 24, 30), (1, 7, 13, 19)),
}


def count_spec(name: str, index: int) -> CountSpec:
    a, s = PRESETS[name]
    return CountSpec(a, s, index)


def term_count(spec: CountSpec) -> int:
    """Coefficient of x^i t^(N i) in prod_d 1/((1 - t^d)(1 - x t^(N - w_d)))."""
    i = spec.index
    top = max(spec.parameter_weights) * i
    # s-part: ways[k][w] = monomials of degree k and weight w in the parameters
    ways = [[0] * (top + 1) for _ in range(i + 1)]
    ways[0][0] = 1
    for w in spec.parameter_weights:
        for k in range(1, i + 1):
            row, prev = ways[k], ways[k - 1]
            for t in range(w, top + 1):
                row[t] += prev[t - w]
    # a-part: partitions of weight t into coefficient weights
    parts = [0] * (top + 1)
    parts[0] = 1
    for w in spec.coefficient_weights:
        for t in range(w, top + 1):
            parts[t] += parts[t - w]
    return sum(c * parts[t] for t, c in enumerate(ways[i]))
