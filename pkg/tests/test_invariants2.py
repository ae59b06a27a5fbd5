import os
import random
import shutil

import numpy as np
import pytest

from fixed3torsion.exact import QQ, Cyclotomic, SparsePoly
from fixed3torsion.groups import act_poly, closure, reflection_generators
from fixed3torsion.invariants2 import (ABCD, BASIS, CacheMissingError, MulMatrix, Z4, build_all,
                                       build_invariants, compute_mul_matrix, contravariants,
                                       contravariants_by_gradient, covariant_set, covariants, matrix_path,
                                       mul_matrix, purge_cache, reduce240, verify_cache)

GENS = reflection_generators("g2")


def _random_point(seed):
    rng = random.Random(seed)
    return [Cyclotomic(QQ(rng.randint(-5, 5)) / rng.randint(1, 3), QQ(rng.randint(-5, 5)) / rng.randint(1, 3))
            for _ in range(4)]


def _apply(g, x):
    return [sum((c * xi for c, xi in zip(row, x)), Cyclotomic(0)) for row in g.rows]


def _pqrz_at(inv, x):
    return [inv.p.to_cyclotomic().evaluate(x), inv.q.to_cyclotomic().evaluate(x),
            inv.r.to_cyclotomic().evaluate(x), x[3]]


@pytest.mark.parametrize("name", ABCD)
@pytest.mark.parametrize("k", range(4))
def test_generator_invariance_exact(name, k):
    f = build_invariants().expanded(name)
    assert act_poly(GENS[k], f) == f.to_cyclotomic()


@pytest.mark.parametrize("name", ["p", "q", "r"])
def test_subgroup_invariance_exact(name):
    f = getattr(build_invariants(), name)
    for g in GENS[:3]:
        assert act_poly(g, f) == f.to_cyclotomic()


def test_last_coordinate_fixed_by_subgroup():
    z = SparsePoly.gens(Z4)[3]
    for g in GENS[:3]:
        assert act_poly(g, z) == z.to_cyclotomic()


def test_flipped_coefficient_breaks_invariance():
    inv = build_invariants()
    p, q, r, z = SparsePoly.gens(("p", "q", "r", "z"), (6, 9, 12, 1))
    scale = inv.d.coeff((0, 1, 1, 9))
    assert scale != 0
    flipped = inv.d - p.monomial(p.vars, (0, 1, 1, 9), 2 * scale, p.weights)
    x = _random_point(7)
    gx = _apply(GENS[3], x)
    good = [inv.d.to_cyclotomic().evaluate(_pqrz_at(inv, y)) for y in (x, gx)]
    bad = [flipped.to_cyclotomic().evaluate(_pqrz_at(inv, y)) for y in (x, gx)]
    assert good[0] == good[1]
    assert bad[0] != bad[1]


def test_opposite_orientation_of_q_breaks_invariance():
    inv = build_invariants()
    x = _random_point(3)
    gx = _apply(GENS[3], x)

    def a_flipped(y):
        p, q, r, z = _pqrz_at(inv, y)
        return inv.a.to_cyclotomic().evaluate([p, -q, r, z])

    assert a_flipped(x) != a_flipped(gx)


def _equivariance_residual(form, action, seed):
    """How far form(g x) is from (row 4 of action(g)) . Phi(x) for a single vector Phi(x)."""
    inv = build_invariants()
    G = closure(GENS)
    rng = np.random.default_rng(seed)
    mats = [np.array([[c.to_complex() for c in row] for row in G.element(int(k)).rows])
            for k in rng.choice(len(G), 24, replace=False)]
    x = rng.normal(size=4) + 1j * rng.normal(size=4)

    def ev(poly, y):
        vals = [complex(inv.p.evaluate(list(y))), complex(inv.q.evaluate(list(y))),
                complex(inv.r.evaluate(list(y))), y[3]]
        return complex(poly.evaluate(vals))

    A = np.array([action(g)[3] for g in mats])
    rhs = np.array([ev(form, g @ x) for g in mats])
    sol = np.linalg.lstsq(A, rhs, rcond=None)[0]
    return np.linalg.norm(A @ sol - rhs) / np.linalg.norm(rhs)


@pytest.mark.parametrize("idx", range(4))
def test_covariants_are_equivariant(idx):
    assert _equivariance_residual(covariants()[idx], lambda g: g, idx) < 1e-9


@pytest.mark.parametrize("idx", range(4))
def test_contravariants_are_equivariant_for_the_dual(idx):
    assert _equivariance_residual(contravariants()[idx], lambda g: np.linalg.inv(g).T, idx) < 1e-9


def test_gradient_recipe_agrees():
    assert contravariants() == contravariants_by_gradient()


def test_covariant_set_lookup():
    cs = covariant_set()
    assert cs.get("covariant", 7) == covariants()[1]
    assert [f.weighted_degree() for f in cs.alpha] == [1, 7, 13, 19]
    assert [f.weighted_degree() for f in cs.beta] == [11, 17, 23, 29]


@pytest.mark.parametrize("name", ABCD)
def test_reduction_returns_the_generator(name):
    inv = build_invariants()
    red = reduce240(getattr(inv, name))
    assert list(red) == [0]
    gen = SparsePoly.gens(ABCD, (12, 18, 24, 30))[ABCD.index(name)]
    assert red[0] == gen


def test_basis_shape():
    assert len(BASIS) == 240
    assert BASIS.index(1, 0, 0, 0) == 120 and BASIS.index(0, 0, 0, 29) == 29


def test_partial_matrix_text_roundtrip():
    M = compute_mul_matrix("covariant", 7, columns=[0, 1, 239])
    again = MulMatrix.from_text(M.to_text())
    assert again.entries == M.entries and again.degree == 7
    assert M.check_degrees()


# -- cache handling (uses the session cache, never modifies it) --------------

def test_cache_structure(g2_cache):
    M1 = mul_matrix(1, directory=g2_cache, build=False)
    assert M1.unit_columns() == 232
    assert all(v == "ok" for v in verify_cache(g2_cache).values())


def test_cache_missing(tmp_path):
    with pytest.raises(CacheMissingError):
        mul_matrix(13, "covariant", tmp_path, build=False)
    assert set(verify_cache(tmp_path).values()) == {"missing"}


def test_cache_corruption_is_named(g2_cache, tmp_path):
    for path in (matrix_path(k, e, g2_cache) for k, es in (("covariant", (1, 7, 13, 19)),
                                                           ("contravariant", (11, 17, 23, 29))) for e in es):
        shutil.copy(path, tmp_path / path.name)
    victim = matrix_path("covariant", 13, tmp_path)
    data = bytearray(victim.read_bytes())
    pos = len(data) // 2
    data[pos] = ord("7") if data[pos] != ord("7") else ord("3")
    victim.write_bytes(bytes(data))
    status = verify_cache(tmp_path)
    assert status[victim.name].startswith("corrupt")
    assert sum(v == "ok" for v in status.values()) == 7


def test_build_twice_is_a_noop(g2_cache, tmp_path):
    for e in (1, 7, 13, 19, 11, 17, 23, 29):
        kind = "covariant" if e in (1, 7, 13, 19) else "contravariant"
        shutil.copy(matrix_path(kind, e, g2_cache), tmp_path)
    before = {p.name: p.stat().st_mtime_ns for p in tmp_path.iterdir()}
    build_all(directory=tmp_path)
    assert before == {p.name: p.stat().st_mtime_ns for p in tmp_path.iterdir()}


def test_purge_only_touches_versioned_files(tmp_path):
    (tmp_path / "notes.txt").write_text("keep")
    (tmp_path / "covariant-01-0000000000000000.txt").write_text("old")
    removed = purge_cache(tmp_path, stale_only=True)
    assert [p.name for p in removed] == ["covariant-01-0000000000000000.txt"]
    assert (tmp_path / "notes.txt").exists()
    assert os.listdir(tmp_path) == ["notes.txt"]
