import random
from fractions import Fraction

import pytest

from lagpoly import (LagpolyError, LagrangianPlane, Symplectomorphism, Vec4Q,
                     hinge_normal_form, is_lagrangian, liouville, omega,
                     random_symplectomorphism)
from lagpoly.symplin import intersect_planes, jmul, mat_inv, mat_mul, nullspace, rref


def _rand_vec(rng):
    return Vec4Q(*[Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                   for _ in range(4)])


def test_omega_antisymmetric_bilinear(rng):
    for _ in range(20):
        u, v, w = _rand_vec(rng), _rand_vec(rng), _rand_vec(rng)
        c = Fraction(rng.randint(-5, 5), 3)
        assert omega(u, v) == -omega(v, u)
        assert omega(u + w.scale(c), v) == omega(u, v) + c * omega(w, v)
        assert omega(u, u) == 0


def test_omega_darboux_values():
    e1, f1 = Vec4Q(1, 0, 0, 0), Vec4Q(0, 1, 0, 0)
    e2, f2 = Vec4Q(0, 0, 1, 0), Vec4Q(0, 0, 0, 1)
    assert omega(e1, f1) == 1 and omega(e2, f2) == 1
    assert omega(e1, e2) == omega(e1, f2) == omega(f1, e2) == omega(f1, f2) == 0


def test_liouville_is_half_omega(rng):
    for _ in range(20):
        p, u = _rand_vec(rng), _rand_vec(rng)
        assert liouville(p, u) == Fraction(1, 2) * omega(p, u)


def test_lagrangian_plane_checks():
    assert is_lagrangian(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 1, 0))
    assert not is_lagrangian(Vec4Q(1, 0, 0, 0), Vec4Q(0, 1, 0, 0))
    with pytest.raises(LagpolyError):
        LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 1, 0, 0))
    with pytest.raises(LagpolyError):
        LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(2, 0, 0, 0))


def test_jmul_squares_to_minus_one(rng):
    for _ in range(10):
        u = _rand_vec(rng)
        assert jmul(jmul(u)) == u.scale(-1)


def test_rref_nullspace_exact():
    rows = [[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]]
    red, pivots = rref(rows)
    assert pivots == [0, 1]
    for v in nullspace(rows):
        for row in rows:
            assert sum(Fraction(a) * b for a, b in zip(row, v)) == 0


def test_mat_inv_roundtrip(rng):
    for seed in range(5):
        m = random_symplectomorphism(seed).matrix
        prod = mat_mul(m, mat_inv(m))
        assert prod == [[1 if i == j else 0 for j in range(4)] for i in range(4)]


def test_symplectomorphism_rejects_non_symplectic():
    with pytest.raises(LagpolyError) as err:
        Symplectomorphism([[2, 0, 0, 0], [0, 1, 0, 0],
                           [0, 0, 1, 0], [0, 0, 0, 1]])
    assert err.value.code == "NOT_SYMPLECTIC"


def test_random_symplectomorphism_deterministic_and_preserves_omega(rng):
    for seed in range(10):
        m1 = random_symplectomorphism(seed)
        m2 = random_symplectomorphism(seed)
        assert m1.matrix == m2.matrix
        u, v = _rand_vec(rng), _rand_vec(rng)
        assert omega(m1.apply(u), m1.apply(v)) == omega(u, v)
    assert random_symplectomorphism(1).matrix != random_symplectomorphism(2).matrix


def test_intersect_planes_transverse_and_line():
    p = LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 1, 0))
    q = LagrangianPlane(Vec4Q(0, 1, 0, 0), Vec4Q(0, 0, 0, 1))
    assert intersect_planes(p, q) == []
    r = LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 0, 1))
    inter = intersect_planes(p, r)
    assert len(inter) == 1 and inter[0] == Vec4Q(1, 0, 0, 0)


def test_hinge_normal_form_properties():
    # planes x2-axis x1-axis vs a sheared partner through the same line
    p = LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 1, 0))
    q = LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 1, 2))
    nf = hinge_normal_form(p, q)
    assert nf.s != 0
    # model pair: M.P = span{e1, e2} (y1 = y2 = 0), M.P' adds slope s in y2
    mp = nf.map.apply_plane(p)
    mq = nf.map.apply_plane(q)
    for b in (mp.b1, mp.b2):
        assert b.y1 == 0 and b.y2 == 0
    for b in (mq.b1, mq.b2):
        assert b.y1 == 0 and b.y2 == nf.s * b.x2


def test_hinge_normal_form_rejects_transverse():
    p = LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 1, 0))
    q = LagrangianPlane(Vec4Q(0, 1, 0, 0), Vec4Q(0, 0, 0, 1))
    with pytest.raises(LagpolyError):
        hinge_normal_form(p, q)
