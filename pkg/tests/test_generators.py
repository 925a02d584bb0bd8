import random
from fractions import Fraction

import pytest

from lagpoly import (LagpolyError, PolygonalCurve, VertexModelSpec,
                     local_vertex_model, model_rays, product_surface,
                     regular_polygon, validate_surface, vertex_star)
from lagpoly.symplin import omega, parallel

from conftest import random_convex_polygon


def test_regular_polygon_exact_on_circle():
    for n in (3, 4, 5, 8, 12):
        p = regular_polygon(n, scale=Fraction(3, 2))
        assert len(p.points) == n and p.closed
        for x, y in p.points:
            assert isinstance(x, Fraction) and isinstance(y, Fraction)
            assert x * x + y * y == Fraction(9, 4)


def test_regular_polygon_rejects_small_n():
    with pytest.raises(LagpolyError):
        regular_polygon(2)


def test_polygonal_curve_rejects_self_intersection():
    with pytest.raises(LagpolyError) as err:
        PolygonalCurve([(0, 0), (2, 2), (2, 0), (0, 2)], closed=True)
    assert err.value.code == "NOT_SIMPLE"


def test_product_surface_combinatorics():
    p, q = regular_polygon(3), regular_polygon(5)
    k = product_surface(p, q)
    assert len(k.vertices) == 15
    assert len(k.faces) == 15
    assert validate_surface(k).passed


def test_product_surface_faces_are_products():
    k = product_surface(regular_polygon(4), regular_polygon(4))
    # each face plane splits into a (x1,y1) direction times a (x2,y2) one
    for fi in range(len(k.faces)):
        d1, d2 = k.face_plane_basis(fi)
        assert omega(d1, d2) == 0


def test_random_products_validate(rng):
    for _ in range(10):
        p = random_convex_polygon(rng)
        q = random_convex_polygon(rng)
        assert validate_surface(product_surface(p, q)).passed


def test_vertex_model_star_matches_spec():
    for tau in (Fraction(1), Fraction(-2), Fraction(3, 2)):
        spec = VertexModelSpec(tau=tau, eps12=1, eps23=-1, eps34=1, eps41=-1)
        k = local_vertex_model(spec)
        star = vertex_star(k, 0)
        assert star.valency == 4
        rays = list(model_rays(spec))
        # the star's edge rays are the model rays up to positive scale,
        # in cyclic order up to rotation/reflection
        for a in rays:
            assert any(parallel(a, r) and a.dot(r) > 0 for r in star.rays)


def test_vertex_model_faces_lagrangian():
    spec = VertexModelSpec(tau=Fraction(2), eps12=-1, eps23=-1,
                           eps34=-1, eps41=-1)
    k = local_vertex_model(spec)
    rep = validate_surface(k)
    assert all(rep.face_lagrangian) and all(rep.face_planar)


def test_vertex_model_sigma_product():
    spec = VertexModelSpec(tau=Fraction(1), eps12=1, eps23=-1,
                           eps34=-1, eps41=1)
    assert spec.sigma == 1
    spec = VertexModelSpec(tau=Fraction(1), eps12=1, eps23=-1,
                           eps34=1, eps41=1)
    assert spec.sigma == -1
