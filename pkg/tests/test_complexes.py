from fractions import Fraction

import pytest

from lagpoly import (LagpolyError, PolyhedralSurface, Vec4Q, dual_complex,
                     product_surface, regular_polygon, validate_surface,
                     vertex_star)
from lagpoly.symplin import omega


def _torus(n=4, m=4):
    return product_surface(regular_polygon(n), regular_polygon(m))


def test_torus_validates():
    k = _torus()
    rep = validate_surface(k)
    assert rep.passed
    assert not rep.has_boundary
    assert all(rep.face_planar) and all(rep.face_lagrangian)
    assert all(rep.vertex_link_ok)


def test_torus_euler_characteristic():
    k = _torus(3, 5)
    v = len(k.vertices)
    f = len(k.faces)
    e = len(k.edge_faces)
    assert v - e + f == 0      # torus
    assert v == 15 and f == 15


def test_non_lagrangian_face_detected():
    verts = [Vec4Q(0, 0, 0, 0), Vec4Q(1, 0, 0, 0),
             Vec4Q(1, 1, 0, 0), Vec4Q(0, 1, 0, 0)]
    k = PolyhedralSurface(verts, [(0, 1, 2, 3)])
    assert omega(verts[1] - verts[0], verts[3] - verts[0]) != 0
    rep = validate_surface(k)
    assert not rep.passed
    assert rep.face_lagrangian == [False]


def test_non_planar_face_detected():
    verts = [Vec4Q(0, 0, 0, 0), Vec4Q(1, 0, 0, 0),
             Vec4Q(1, 0, 1, 0), Vec4Q(0, 0, 0, 1)]
    k = PolyhedralSurface(verts, [(0, 1, 2, 3)])
    rep = validate_surface(k)
    assert not rep.passed
    assert rep.face_planar == [False]


def test_vertex_star_cyclic_consistency():
    k = _torus()
    star = vertex_star(k, 0)
    n = star.valency
    assert n == 4
    assert len(star.planes) == len(star.lines) == len(star.rays) == n
    # line ell_{i,i+1} lies in both neighbouring planes
    for i in range(n):
        for plane in (star.planes[i], star.planes[(i + 1) % n]):
            assert plane.contains(star.lines[i])
    # the edge ray is parallel to the shared line
    for i in range(n):
        assert omega(star.rays[i], star.lines[i]) == 0


def test_vertex_star_rejects_boundary_vertex():
    verts = [Vec4Q(0, 0, 0, 0), Vec4Q(1, 0, 0, 0),
             Vec4Q(1, 0, 1, 0), Vec4Q(0, 0, 1, 0)]
    k = PolyhedralSurface(verts, [(0, 1, 2, 3)])
    with pytest.raises(LagpolyError):
        vertex_star(k, 0)


def test_dual_complex_counts():
    k = _torus(4, 4)
    dc = dual_complex(k)
    assert len(dc.dual_vertices) == len(k.faces)
    assert len(dc.dual_cells) == len(k.vertices)     # all vertices interior
    assert len(dc.dual_edges) == len(k.edge_faces)
    # every dual 2-cell is the cyclic face order of the vertex star
    for v, order in dc.dual_cells.items():
        star = vertex_star(k, v)
        assert sorted(order) == sorted(star.faces)


def test_degenerate_face_rejected():
    verts = [Vec4Q(0, 0, 0, 0), Vec4Q(1, 0, 0, 0), Vec4Q(2, 0, 0, 0)]
    k = PolyhedralSurface(verts, [(0, 1, 2)])
    rep = validate_surface(k)
    assert not rep.passed
