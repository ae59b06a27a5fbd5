import random

import pytest
import sympy as sp

from fixed3torsion.exact import QQ, cube_class
from fixed3torsion.genus2 import (CurveG2W, RichelotParams, adjust_model, check_deg240, commutes, disc_g2,
                                  findisos, identity_trace_formulas, new_coeffs_g2, normalize_projective,
                                  real_points, richelot_abcd, richelot_disc, richelot_family, specialize_matrix,
                                  symbolic_richelot, traces)
from oracles import sym, to_sympy

pytestmark = pytest.mark.slow

MODULAR_X = CurveG2W(QQ(12) / 5, QQ(12) / 5 ** 2, QQ(292) / 5 ** 3, QQ(-3672) / 5 ** 5)
MODULAR_STUV = (QQ(129) / 125, QQ(11) / 25, QQ(3) / 100, QQ(1) / 20)
MODULAR_Y = (QQ(2 ** 7) / 5, QQ(2 ** 11 * 57) / 5 ** 2, QQ(-2 ** 12 * 503) / 5 ** 3, QQ(2 ** 17 * 17943) / 5 ** 5)


def random_curve(rng):
    while True:
        try:
            return CurveG2W(*(QQ(rng.randint(-9, 9)) / rng.randint(1, 4) for _ in range(4)))
        except ValueError:
            continue


def random_stuv(rng, height=3):
    while True:
        stuv = tuple(QQ(rng.randint(-height, height)) / rng.randint(1, 2) for _ in range(4))
        if any(stuv):
            return stuv


# -- curves -------------------------------------------------------------------

def test_discriminant_matches_sympy():
    x = sp.Symbol("x")
    a, b, c, d = (QQ(3), QQ(-1) / 2, QQ(5), QQ(2) / 7)
    want = 256 * sp.discriminant(x ** 5 + sym(a) * x ** 3 + sym(b) * x ** 2 + sym(c) * x + sym(d), x)
    assert sym(disc_g2(a, b, c, d)) == want


def test_singular_curve_rejected():
    with pytest.raises(ValueError):
        CurveG2W(0, 0, 0, 0)


@pytest.mark.parametrize("u", [QQ(2), QQ(-3) / 5])
def test_rescale_scales_discriminant(u):
    assert MODULAR_X.rescale(u).disc == u ** 40 * MODULAR_X.disc


def test_adjust_model_lands_in_class():
    Y = CurveG2W(*MODULAR_Y).rescale(QQ(7))
    for target in (MODULAR_X.disc, 1 / MODULAR_X.disc, QQ(11)):
        assert cube_class(adjust_model(Y, target).disc / target)[0]


def test_normalize_projective():
    assert normalize_projective((QQ(-1) / 2, QQ(3) / 4, 0, 1)) == (2, -3, 0, -4)


# -- identity and the degree-240 polynomial -----------------------------------

def test_identity_on_random_curves(g2_cache):
    rng = random.Random(2024)
    for _ in range(10):
        X = random_curve(rng)
        assert new_coeffs_g2(X, (1, 0, 0, 0), directory=g2_cache) == X.coeffs
        tv = traces(specialize_matrix("main", X, (1, 0, 0, 0), g2_cache))
        assert tv.as_tuple() == identity_trace_formulas(*X.coeffs)


def test_closed_form_degree_240_coefficients(g2_cache):
    rng = random.Random(5)
    for _ in range(3):
        assert check_deg240(random_curve(rng), g2_cache)


def test_trace_of_the_cube_vanishes(g2_cache):
    tv = traces(specialize_matrix("main", MODULAR_X, MODULAR_STUV, g2_cache))
    assert tv.tau1 == 0


# -- structural checks on the matrices ----------------------------------------

@pytest.mark.parametrize("seed", range(3))
def test_matrices_commute(g2_cache, seed):
    X = random_curve(random.Random(seed))
    for kind, degs in (("covariant", (1, 7, 13, 19)), ("contravariant", (11, 17, 23, 29))):
        for i in range(4):
            for j in range(i + 1, 4):
                assert commutes(kind, degs[i], degs[j], X, g2_cache)


def test_cube_class_property(g2_cache):
    rng = random.Random(77)
    for k in range(10):
        X = random_curve(rng)
        stuv = random_stuv(rng)
        kind = "main" if k % 2 == 0 else "star"
        Y = new_coeffs_g2(X, stuv, kind, g2_cache)
        if Y.on_discriminant_locus:
            continue
        D = disc_g2(*Y)
        assert cube_class(D / X.disc if kind == "main" else D * X.disc)[0]


def test_weight_homogeneity_in_parameters(g2_cache):
    lam = QQ(3)
    stuv = (QQ(1), QQ(-2), QQ(0), QQ(1))
    base = new_coeffs_g2(MODULAR_X, stuv, directory=g2_cache)
    scaled = [lam * x for x in stuv]
    # M is linear in (s, t, u, v) and tau_n has degree 6n in M
    got = new_coeffs_g2(MODULAR_X, scaled, directory=g2_cache)
    assert tuple(got) == tuple(lam ** w * x for w, x in zip((12, 18, 24, 30), base))


def test_zero_parameters_rejected(g2_cache):
    with pytest.raises(ValueError):
        new_coeffs_g2(MODULAR_X, (0, 0, 0, 0), directory=g2_cache)


# -- the modular example ---------------------------------------------------------

def test_modular_example_exact(g2_cache):
    assert tuple(new_coeffs_g2(MODULAR_X, MODULAR_STUV, directory=g2_cache)) == MODULAR_Y


def test_real_points_solve_the_system(g2_cache):
    import mpmath
    from fixed3torsion.invariants2 import build_invariants
    inv = build_invariants()
    pts = real_points(MODULAR_X, 60, g2_cache)
    assert pts
    with mpmath.workdps(80):
        for P in pts:
            for f, target in zip((inv.a, inv.b, inv.c, inv.d), MODULAR_X.coeffs):
                val = f.evaluate(list(P))
                assert abs(val - mpmath.mpf(int(target.numerator)) / int(target.denominator)) < mpmath.mpf(10) ** -40


def test_findisos_recovers_modular_tuple(g2_cache):
    sols = findisos(MODULAR_X, CurveG2W(*MODULAR_Y), precision=100, cases=("main",), directory=g2_cache)
    assert MODULAR_STUV in [s.stuv for s in sols] or tuple(-x for x in MODULAR_STUV) in [s.stuv for s in sols]
    assert all(s.verified for s in sols)


# -- Richelot family --------------------------------------------------------------

def test_richelot_symbolic_formulas():
    abcd, disc, closed = symbolic_richelot()
    assert disc == closed
    e, f, g, x = sp.symbols("e f g x")
    a, b, c, d = (to_sympy(p) for p in abcd)
    want = 256 * sp.discriminant(x ** 5 + a * x ** 3 + b * x ** 2 + c * x + d, x)
    assert sp.expand(want - to_sympy(closed)) == 0


def test_richelot_pair_has_cube_class():
    X, Y, _ = richelot_family(RichelotParams(1, 2, 3))
    assert X.coeffs == tuple(richelot_abcd(QQ(1), QQ(2), QQ(3)))
    assert X.disc == richelot_disc(QQ(1), QQ(2), QQ(3))
    assert cube_class(X.disc * Y.disc)[0]


def test_richelot_star_findisos(g2_cache):
    X, Y, _ = richelot_family(RichelotParams(1, 2, 3))
    sols = findisos(X, Y, precision=80, cases=("star",), directory=g2_cache)
    assert sols and all(s.verified and s.case == "star" for s in sols)
    s = sols[0]
    assert tuple(new_coeffs_g2(X, s.stuv, "star", g2_cache)) == s.target
    assert cube_class(disc_g2(*s.target) / Y.disc)[0]
