"""Paths and loops in the Lagrangian Grassmannian LGr(2) and their
winding-number Maslov index.

A Lagrangian plane with Euclidean-orthonormal basis (u, v) maps to the
unitary 2x2 matrix with columns (u, v) read as complex vectors
(x1 + i y1, x2 + i y2); det^2 of that matrix is independent of the
orthonormal basis and winds around the unit circle along a loop of
planes.  Normalization: theta in [0, pi] |-> span{cos th e1 + sin th f1, e2}
has index 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .complexes import VertexStar
from .errors import LagpolyError
from .symplin import (LagrangianPlane, ReductionFrame, Vec4Q,
                      intersect_planes, normalize_direction)

GRAM_TOL = 1e-9
INTEGRALITY_TOL = 1e-6
MAX_PHASE_STEP = math.pi / 2


def orthonormal_frame(columns) -> np.ndarray:
    """Gram-Schmidt on the two spanning columns (4-vectors)."""
    a = np.asarray(columns, dtype=float)
    u = a[:, 0] / np.linalg.norm(a[:, 0])
    v = a[:, 1] - np.dot(a[:, 1], u) * u
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        raise LagpolyError("DEGENERATE_SPAN", "frame columns nearly dependent")
    return np.column_stack([u, v / nv])


def plane_frame(plane: LagrangianPlane) -> np.ndarray:
    return orthonormal_frame(np.column_stack([plane.b1.floats(), plane.b2.floats()]))


def lagrangian_gram_defect(frame: np.ndarray) -> float:
    """|omega(u, v)| for an orthonormal frame; 0 for Lagrangian planes."""
    u, v = frame[:, 0], frame[:, 1]
    return abs(u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2])


def det_squared(frame: np.ndarray) -> complex:
    """det^2 of the unitary matrix attached to an orthonormal Lagrangian frame."""
    c = frame[0] + 1j * frame[1], frame[2] + 1j * frame[3]
    det = c[0][0] * c[1][1] - c[0][1] * c[1][0]
    return det * det


def frames_equal(f1: np.ndarray, f2: np.ndarray, tol: float = 1e-8) -> bool:
    p1 = f1 @ f1.T
    p2 = f2 @ f2.T
    return bool(np.max(np.abs(p1 - p2)) < tol)


@dataclass
class MaslovResult:
    index: int
    raw_winding: float       # total det^2 phase / (2 pi)
    defect: float            # |raw_winding - index|

    def __int__(self):
        return self.index


class RotationPath:
    """Path of Lagrangian planes through a fixed line ell, rotating the
    reduction-plane line of L onto that of L' by theta* in (0, pi) in the
    omega_W-positive direction.  Endpoints are the exact input planes."""

    def __init__(self, start: LagrangianPlane, end: LagrangianPlane,
                 ell: Vec4Q, frame: ReductionFrame, theta: float,
                 start_coords, end_coords):
        self.start = start
        self.end = end
        self.ell = ell
        self.theta = theta
        self._a = np.array(ell.floats())
        self._w1 = np.array(frame.w1.floats())
        self._w2 = np.array(frame.w2.floats())
        x0, y0 = float(start_coords[0]), float(start_coords[1])
        n0 = math.hypot(x0, y0)
        self._c0 = (x0 / n0, y0 / n0)

    def plane_at(self, t: float) -> np.ndarray:
        phi = self.theta * t
        x = self._c0[0] * math.cos(phi) - self._c0[1] * math.sin(phi)
        y = self._c0[0] * math.sin(phi) + self._c0[1] * math.cos(phi)
        lift = x * self._w1 + y * self._w2
        return orthonormal_frame(np.column_stack([self._a, lift]))

    def start_frame(self) -> np.ndarray:
        return plane_frame(self.start)

    def end_frame(self) -> np.ndarray:
        return plane_frame(self.end)


class SampledPath:
    """Fixed list of sampled plane frames; cannot be refined, so coarse
    phase steps raise instead of bisecting."""

    def __init__(self, frames, check_lagrangian: bool = True):
        self.frames = [orthonormal_frame(f) for f in frames]
        if check_lagrangian:
            for f in self.frames:
                if lagrangian_gram_defect(f) > GRAM_TOL:
                    raise LagpolyError("NOT_LAGRANGIAN",
                                       "sampled plane fails the Gram test")

    def start_frame(self) -> np.ndarray:
        return self.frames[0]

    def end_frame(self) -> np.ndarray:
        return self.frames[-1]


def connect_planes(l1: LagrangianPlane, l2: LagrangianPlane) -> RotationPath:
    """Counterclockwise (omega_W-positive) rotation of L1 onto L2 through
    planes containing ell = L1 cap L2, by the unique angle in (0, pi)."""
    inter = intersect_planes(l1, l2)
    if len(inter) != 1:
        raise LagpolyError("BAD_INTERSECTION",
                           f"planes intersect in dimension {len(inter)}, need 1")
    ell = normalize_direction(inter[0])
    frame = ReductionFrame(ell)

    def w_coords(plane):
        from .symplin import rref
        red, _ = rref([list(ell), list(plane.b1), list(plane.b2)])
        for row in reversed(red):
            v = Vec4Q(*row)
            if not v.is_zero():
                c = frame.reduce(v)
                if c != (0, 0):
                    return c
        raise LagpolyError("BAD_INTERSECTION", "plane reduces to the zero line")

    c1, c2 = w_coords(l1), w_coords(l2)
    phi1 = math.atan2(float(c1[1]), float(c1[0]))
    phi2 = math.atan2(float(c2[1]), float(c2[0]))
    theta = (phi2 - phi1) % math.pi
    if theta < 1e-12 or theta > math.pi - 1e-12:
        raise LagpolyError("BAD_INTERSECTION", "lines coincide in the reduction plane")
    return RotationPath(l1, l2, ell, frame, theta, c1, c2)


def _phase_delta(d1: complex, d2: complex) -> float:
    return cmath.phase(d2 / d1)


def _accumulate_rotation(path: RotationPath, t0: float, t1: float,
                         d0: complex, depth: int = 0) -> tuple[float, complex]:
    d1 = det_squared(path.plane_at(t1))
    step = _phase_delta(d0, d1)
    if abs(step) < MAX_PHASE_STEP:
        return step, d1
    if depth > 40:
        raise LagpolyError("NONINTEGRAL", "phase step refinement failed")
    tm = (t0 + t1) / 2
    s1, dm = _accumulate_rotation(path, t0, tm, d0, depth + 1)
    s2, d1 = _accumulate_rotation(path, tm, t1, dm, depth + 1)
    return s1 + s2, d1


def maslov_index(segments, closed: bool = True) -> MaslovResult:
    """Winding number of det^2 along a closed concatenation of path
    segments (RotationPath or SampledPath).  Raises NOT_CLOSED if the
    concatenation does not close up, NONINTEGRAL if the winding fails
    the integrality gate."""
    if not segments:
        raise LagpolyError("NOT_CLOSED", "empty loop")
    # continuity + closure of the concatenation
    prev_end = segments[-1].end_frame() if closed else None
    for seg in segments:
        if prev_end is not None and not frames_equal(seg.start_frame(), prev_end):
            raise LagpolyError("NOT_CLOSED", "segments do not concatenate into a loop")
        prev_end = seg.end_frame()

    total = 0.0
    for seg in segments:
        if isinstance(seg, RotationPath):
            n0 = 16
            d = det_squared(seg.plane_at(0.0))
            for i in range(n0):
                step, d = _accumulate_rotation(seg, i / n0, (i + 1) / n0, d)
                total += step
        else:
            frames = seg.frames
            d = det_squared(frames[0])
            for f in frames[1:]:
                dn = det_squared(f)
                step = _phase_delta(d, dn)
                if abs(step) >= MAX_PHASE_STEP:
                    raise LagpolyError("NONINTEGRAL",
                                       "sampled loop too coarse (phase step >= pi/2)")
                total += step
                d = dn
    raw = total / (2 * math.pi)
    index = round(raw)
    defect = abs(raw - index)
    if defect >= INTEGRALITY_TOL:
        raise LagpolyError("NONINTEGRAL", f"winding {raw} is not an integer")
    return MaslovResult(index, raw, defect)


def vertex_maslov(star: VertexStar) -> MaslovResult:
    """Combinatorial Maslov index at a vertex: concatenate the rotation
    connectors L_i -> L_{i+1} cyclically and take the loop winding."""
    n = star.valency
    segs = [connect_planes(star.planes[i], star.planes[(i + 1) % n])
            for i in range(n)]
    return maslov_index(segs)


def smoothed_vertex_maslov(tangent_planes, closed: bool = True) -> MaslovResult:
    """Maslov index of a densely sampled tangent-plane loop (e.g. the loop
    along a smoothed sphere link).  Input: sequence of 4x2 plane frames."""
    frames = [np.asarray(f, dtype=float) for f in tangent_planes]
    if closed:
        first, last = frames[0], frames[-1]
        p1 = orthonormal_frame(first)
        p2 = orthonormal_frame(last)
        if not frames_equal(p1, p2, tol=1e-6):
            frames = frames + [frames[0]]
    path = SampledPath(frames)
    return maslov_index([path])
