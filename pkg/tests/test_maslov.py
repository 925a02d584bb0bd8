import math

import numpy as np
import pytest

from lagpoly import (LagpolyError, maslov_index, product_surface,
                     regular_polygon, smoothed_vertex_maslov, vertex_maslov,
                     vertex_star)
from lagpoly.maslov import (SampledPath, connect_planes, det_squared,
                            lagrangian_gram_defect, orthonormal_frame)
from lagpoly.symplin import LagrangianPlane, Vec4Q


def _single_rotation_loop(n):
    """Plane loop span{(cos t, sin t, 0, 0), e2} for t in [0, pi]."""
    frames = []
    for i in range(n + 1):
        t = math.pi * i / n
        frames.append(np.array([[math.cos(t), 0.0],
                                [math.sin(t), 0.0],
                                [0.0, 1.0],
                                [0.0, 0.0]]))
    return frames


def _diagonal_rotation_loop(n):
    """Both factors rotate by pi simultaneously."""
    frames = []
    for i in range(n + 1):
        t = math.pi * i / n
        frames.append(np.array([[math.cos(t), 0.0],
                                [math.sin(t), 0.0],
                                [0.0, math.cos(t)],
                                [0.0, math.sin(t)]]))
    return frames


def test_calibration_single_factor_index_1():
    res = maslov_index([SampledPath(_single_rotation_loop(10000))])
    assert res.index == 1
    assert res.defect < 1e-6


def test_calibration_diagonal_index_2():
    res = maslov_index([SampledPath(_diagonal_rotation_loop(10000))])
    assert res.index == 2
    assert res.defect < 1e-6


def test_constant_loop_index_0():
    f = np.array([[1.0, 0.0], [0.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    res = maslov_index([SampledPath([f] * 50)])
    assert res.index == 0 and res.defect < 1e-12


def test_loop_reversal_negates_index():
    frames = _single_rotation_loop(2000)
    fwd = maslov_index([SampledPath(frames)])
    rev = maslov_index([SampledPath(frames[::-1])])
    assert rev.index == -fwd.index == -1


def test_winding_additivity_under_iteration():
    frames = _single_rotation_loop(2000)
    doubled = frames[:-1] + frames
    res = maslov_index([SampledPath(doubled)])
    assert res.index == 2


def test_coarse_sampled_loop_raises():
    with pytest.raises(LagpolyError) as err:
        maslov_index([SampledPath(_diagonal_rotation_loop(3))])
    assert err.value.code == "NONINTEGRAL"


def test_open_concatenation_rejected():
    frames = _single_rotation_loop(100)
    with pytest.raises(LagpolyError) as err:
        maslov_index([SampledPath(frames[:50])])
    assert err.value.code == "NOT_CLOSED"


def test_sampled_path_rejects_non_lagrangian():
    bad = np.array([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]])
    with pytest.raises(LagpolyError):
        SampledPath([bad, bad])


def test_orthonormal_frame_properties():
    cols = np.array([[3.0, 1.0], [0.0, 0.0], [0.0, 2.0], [0.0, 0.0]])
    f = orthonormal_frame(cols)
    assert np.allclose(f.T @ f, np.eye(2), atol=1e-12)
    assert lagrangian_gram_defect(f) < 1e-12


def test_det_squared_unit_modulus():
    for frames in (_single_rotation_loop(7), _diagonal_rotation_loop(7)):
        for f in frames:
            assert abs(abs(det_squared(orthonormal_frame(f))) - 1.0) < 1e-12


def test_connect_planes_endpoints_exact():
    l1 = LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 1, 0))
    l2 = LagrangianPlane(Vec4Q(1, 0, 0, 0), Vec4Q(0, 0, 0, 1))
    path = connect_planes(l1, l2)
    assert 0 < path.theta < math.pi
    f0 = orthonormal_frame(path.plane_at(0.0))
    f1 = orthonormal_frame(path.plane_at(1.0))
    assert np.allclose(f0 @ f0.T, path.start_frame() @ path.start_frame().T,
                       atol=1e-9)
    assert np.allclose(f1 @ f1.T, path.end_frame() @ path.end_frame().T,
                       atol=1e-9)


def test_torus_vertex_maslov_is_2():
    k = product_surface(regular_polygon(4), regular_polygon(4))
    for v in range(4):
        res = vertex_maslov(vertex_star(k, v))
        assert res.index == 2
        assert res.defect < 1e-6


def test_smoothed_vertex_maslov_closes_loop():
    frames = _diagonal_rotation_loop(4000)
    res = smoothed_vertex_maslov(frames)
    assert res.index == 2
