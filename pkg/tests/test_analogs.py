import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from fixed3torsion.analogs import (PRESETS, CountSpec, companion, count_spec, p2_new_coeffs, root_image_error,
                                   symbolic_p2_coeffs, term_count, tschirnhausen_basis)
from fixed3torsion.exact import QQ, SparsePoly
from oracles import sym, to_sympy

rationals = st.builds(lambda n, d: QQ(n) / d, st.integers(-20, 20), st.integers(1, 7))


def test_identity_parameters():
    X = (QQ(3) / 2, QQ(-1), QQ(7), QQ(2) / 9)
    assert p2_new_coeffs(X, (1, 0, 0, 0)) == X


def test_symbolic_term_counts_and_weights():
    coeffs = symbolic_p2_coeffs()
    assert [len(f) for f in coeffs] == [24, 86, 235, 535]
    assert [f.weighted_degrees() for f in coeffs] == [{2}, {3}, {4}, {5}]


def test_symbolic_matches_sympy_determinant():
    a, b, c, d, s, t, u, v, x = sp.symbols("a b c d s t u v x")
    C = sp.Matrix(5, 5, lambda i, j: 1 if i == j + 1 else 0)
    for i, coef in enumerate((d, c, b, a, 0)):
        C[i, 4] = -coef
    mats = [C ** j - (C ** j).trace() / 5 * sp.eye(5) for j in range(1, 5)]
    N = s * mats[0] + t * mats[1] + u * mats[2] + v * mats[3]
    cp = sp.Poly(sp.expand((x * sp.eye(5) - N).det(method="berkowitz")), x)
    ours = symbolic_p2_coeffs()
    assert cp.coeff_monomial(x ** 4) == 0
    for k, f in zip((3, 2, 1, 0), ours):
        assert sp.expand(cp.coeff_monomial(x ** k) - to_sympy(f)) == 0


@settings(max_examples=10)
@given(st.tuples(rationals, rationals, rationals, rationals), st.tuples(rationals, rationals, rationals, rationals))
def test_specialization_commutes_with_symbolic(X, stuv):
    sym_coeffs = symbolic_p2_coeffs()
    vals = [*X, *stuv]
    assert tuple(f.evaluate(vals) for f in sym_coeffs) == p2_new_coeffs(X, stuv)


def test_root_images():
    X = (QQ(-3), QQ(1) / 2, QQ(2), QQ(-5) / 3)
    stuv = (QQ(2), QQ(-1) / 3, QQ(3) / 4, QQ(1) / 7)
    assert root_image_error(X, stuv, 60) < sp.Float("1e-40")


@settings(max_examples=10)
@given(st.tuples(rationals, rationals, rationals, rationals), rationals)
def test_weight_homogeneity(X, lam):
    if not lam:
        return
    stuv = (QQ(2), QQ(-1), QQ(1) / 3, QQ(5))
    scaled = tuple(lam ** w * x for w, x in zip((2, 3, 4, 5), X))
    stuv_scaled = tuple(lam ** (1 - j) * s for j, s in enumerate(stuv, start=1))
    out = p2_new_coeffs(scaled, stuv_scaled)
    want = tuple(lam ** w * x for w, x in zip((2, 3, 4, 5), p2_new_coeffs(X, stuv)))
    assert out == want


def test_tschirnhausen_basis_traceless():
    B = tschirnhausen_basis([QQ(1), QQ(2), QQ(3), QQ(4)], QQ(1))
    for A in B.alphas:
        assert sum(A[i][i] for i in range(5)) == 0
    # power sums of the roots: p2 = -2a, p3 = -3b, p4 = 2a^2 - 4c
    assert B.shifts[1:] == [QQ(-2) / 5, QQ(-6) / 5, QQ(-10) / 5]


def test_companion_charpoly():
    x = sp.Symbol("x")
    M = sp.Matrix([[sym(e) for e in r] for r in companion([QQ(1), QQ(2), QQ(3), QQ(4)], QQ(1))])
    assert sp.expand(M.charpoly(x).as_expr() - (x ** 5 + x ** 3 + 2 * x ** 2 + 3 * x + 4)) == 0


def test_degree_seven():
    coeffs = [QQ(k) for k in (1, -2, 3, 0, 1, 5)]
    assert p2_new_coeffs(coeffs, (1, 0, 0, 0, 0, 0)) == tuple(coeffs)
    assert root_image_error(coeffs, (1, 2, 0, -1, 0, 1), 60) < sp.Float("1e-40")


def test_term_counts():
    assert [term_count(count_spec("g2-bigraded", i)) for i in (12, 18, 24, 30)] == [14671, 112933, 515454, 1727921]
    assert term_count(count_spec("e7", 18)) == 11617543745
    assert term_count(count_spec("e8", 30)) == 100315853630512


def test_term_counts_at_zero():
    assert all(term_count(count_spec(name, 0)) == 1 for name in PRESETS)


def _brute_force(spec: CountSpec) -> int:
    """Enumerate monomials directly."""
    from itertools import product
    i = spec.index
    count = 0
    for s_exps in product(range(i + 1), repeat=len(spec.parameter_weights)):
        if sum(s_exps) != i:
            continue
        w = sum(e * k for e, k in zip(s_exps, spec.parameter_weights))
        ways = [1] + [0] * w
        for cw in spec.coefficient_weights:
            for k in range(cw, w + 1):
                ways[k] += ways[k - cw]
        count += ways[w]
    return count


@given(st.lists(st.integers(1, 6), min_size=1, max_size=3), st.lists(st.integers(1, 5), min_size=1, max_size=3),
       st.integers(0, 5))
def test_term_count_matches_enumeration(aw, sw, i):
    spec = CountSpec(tuple(aw), tuple(sw), i)
    assert term_count(spec) == _brute_force(spec)


def test_generating_function_oracle():
    x, t = sp.symbols("x t")
    degs = (2, 3)
    N = 4
    i = 3
    gf = 1
    for d in degs:
        gf *= sum(t ** (d * k) for k in range(0, N * i // d + 1)) * sum((x * t ** (N - (d - 1))) ** k
                                                                        for k in range(i + 1))
    coeff = sp.Poly(sp.expand(gf), x, t).coeff_monomial(x ** i * t ** (N * i))
    assert term_count(CountSpec(degs, tuple(d - 1 for d in degs), i)) == coeff


def test_polynomial_inputs_keep_their_ring():
    a, b, c, d = SparsePoly.gens(("a", "b", "c", "d"), (2, 3, 4, 5))
    out = p2_new_coeffs((a, b, c, d), (1, 0, 0, 0))
    assert out == (a, b, c, d)
