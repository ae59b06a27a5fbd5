from functools import lru_cache

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from fixed3torsion.exact import QQ, cube_class
from fixed3torsion.genus1 import (CurveG1, UnsupportedCaseError, _match_F, charpoly_main, derived_contravariants_g1,
                                  disc_g1, disc_identity_g1, division_poly_g1, find_st, invariant_data,
                                  matricial_identity_g1, new_coeffs_g1, new_coeffs_g1_star, octic_F,
                                  proportionality, star_forms, symbolic_new_coeffs_g1)
from oracles import to_sympy

a, b, s, t, U, z = sp.symbols("a b s t U z")
OCTIC = z ** 8 + 18 * a * z ** 4 + 108 * b * z ** 2 - 27 * a ** 2
W = 9 * a / z  # on the octic the invariant w equals 9a/z


@lru_cache(maxsize=None)
def _sympy_charpoly(expr_num, denom):
    """prod (U - Z(z_i)) over the octic's roots, for Z = expr_num / denom (denom a power of z)."""
    res = sp.resultant(OCTIC, sp.expand(denom * U - expr_num), z)
    lead = sp.Poly(res, U).LC()
    return sp.expand(sp.cancel(res / lead))


def _match_sympy_F(cp):
    P = sp.Poly(cp, U)
    A = P.coeff_monomial(U ** 4) / 18
    B = P.coeff_monomial(U ** 2) / 108
    assert sp.expand(cp - (U ** 8 + 18 * A * U ** 4 + 108 * B * U ** 2 - 27 * A ** 2)) == 0
    return sp.expand(A), sp.expand(B)


rationals = st.builds(lambda n, d: QQ(n) / d, st.integers(-30, 30), st.integers(1, 6))


def test_closed_forms_have_expected_term_counts():
    A, B = symbolic_new_coeffs_g1()
    assert (len(A * 3), len(B * 9)) == (6, 9)
    assert all(c.denominator == 1 for c in (A * 3).terms.values())
    assert all(c.denominator == 1 for c in (B * 9).terms.values())


def test_closed_forms_match_resultant_oracle():
    # Z = s z + t (w + z^3)/6, times 6z to clear denominators
    num = 6 * s * z ** 2 + t * (9 * a + z ** 4)
    A_ref, B_ref = _match_sympy_F(_sympy_charpoly(num, 6 * z))
    A, B = symbolic_new_coeffs_g1()
    assert sp.expand(to_sympy(A) - A_ref) == 0
    assert sp.expand(to_sympy(B) - B_ref) == 0


def test_star_forms_match_resultant_oracle():
    # Z* = s (w - z^3)/2 + t (5 w z^2 + 3 z^5)/18, times 18z
    num = 9 * s * (9 * a - z ** 4) + t * (45 * a * z ** 2 + 3 * z ** 6)
    A_ref, B_ref = _match_sympy_F(_sympy_charpoly(num, 18 * z))
    As, Bs = star_forms()
    assert sp.expand(to_sympy(As) - A_ref) == 0
    assert sp.expand(to_sympy(Bs) - B_ref) == 0
    assert (len(As), len(Bs)) == (9, 16)


def test_characteristic_identity():
    A, B = _match_F(charpoly_main())
    assert (A, B) == symbolic_new_coeffs_g1()
    cp = charpoly_main()
    assert cp[4] == A * 18 and cp[2] == B * 108 and cp[0] == A * A * (-27)


def test_discriminant_identity():
    ident = disc_identity_g1()
    assert ident.kappa == 1
    assert ident.ratio == QQ(1) / 3
    assert ident.q.coeff((0, 0, 4, 0)) == 1
    # the variant with s and t exchanged, scaled by 27, is not an identity
    assert ident.swapped_form_matches is False


def test_matricial_identity():
    assert matricial_identity_g1()


def test_derived_contravariants_proportional():
    d = invariant_data()
    da, db = derived_contravariants_g1()
    ca, cb = proportionality(da, d.beta3), proportionality(db, d.beta5)
    assert ca is not None and ca != 0
    assert cb is not None and cb != 0


def test_find_known_pairs():
    sols = find_st(CurveG1(-1, 0), CurveG1(-27, -162))
    assert sols["main"] == []
    assert sorted(sols["star"]) == sorted([(QQ(-1) / 2, QQ(3) / 2), (QQ(1) / 2, QQ(-3) / 2)])
    X = CurveG1(5805, -285714)
    sols = find_st(X, X)
    assert sorted(sols["main"]) == [(QQ(-1), QQ(0)), (QQ(1), QQ(0))]
    c = QQ(1) / (2 ** 6 * 3 ** 4 * 7 ** 2)
    assert sorted(sols["star"]) == sorted([(435 * c, 11 * c), (-435 * c, -11 * c)])


def test_identity_parameters():
    assert new_coeffs_g1(3, 5, 1, 0) == (3, 5)


def test_singular_and_unsupported_inputs():
    with pytest.raises(ValueError):
        CurveG1(-3, 2)
    with pytest.raises(UnsupportedCaseError):
        division_poly_g1(CurveG1(0, 1))


@given(rationals, rationals, rationals, rationals, st.integers(1, 5))
def test_weight_zero_homogeneity(a_, b_, s_, t_, lam):
    lam = QQ(lam)
    lhs = new_coeffs_g1(lam ** 4 * a_, lam ** 6 * b_, s_ / lam, t_ / lam ** 3)
    assert lhs == new_coeffs_g1(a_, b_, s_, t_)
    lhs = new_coeffs_g1_star(lam ** 4 * a_, lam ** 6 * b_, s_ / lam ** 3, t_ / lam ** 5)
    assert lhs == new_coeffs_g1_star(a_, b_, s_, t_)


@given(rationals, rationals, rationals, rationals)
def test_discriminant_ratio_is_a_cube(a_, b_, s_, t_):
    d0 = disc_g1(a_, b_)
    for A, B, star in ((*new_coeffs_g1(a_, b_, s_, t_), False), (*new_coeffs_g1_star(a_, b_, s_, t_), True)):
        d1 = disc_g1(A, B)
        if d0 and d1:
            assert cube_class(d1 * d0 if star else d1 / d0)[0]


@settings(max_examples=8)
@given(st.integers(-9, 9), st.integers(-9, 9), st.integers(-4, 4), st.integers(-4, 4))
def test_find_roundtrip(a_, b_, s_, t_):
    if not disc_g1(QQ(a_), QQ(b_)) or (s_, t_) == (0, 0):
        return
    X = CurveG1(a_, b_)
    A, B = new_coeffs_g1(a_, b_, s_, t_)
    if not disc_g1(A, B):
        return
    sols = find_st(X, CurveG1(A, B))
    assert (QQ(s_), QQ(t_)) in sols["main"]
    for st_ in sols["main"]:
        assert new_coeffs_g1(a_, b_, *st_) == (A, B)


def test_octic_matches_division_polynomial():
    X = CurveG1(2, 3)
    f = division_poly_g1(X)
    uu = sp.Symbol("u")
    assert sp.expand(sum(sp.Rational(int(c.numerator), int(c.denominator)) * uu ** i
                         for i, c in enumerate(f.coeffs)) - octic_F(2, 3, uu)) == 0
