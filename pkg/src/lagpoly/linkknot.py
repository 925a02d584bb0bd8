"""Sphere links of polyhedral Lagrangian surfaces at a vertex.

Cutting a Lagrangian cone with the sphere S^3_delta(v) yields a piecewise
Legendrian knot (one great-circle arc per face, contact structure
alpha_p(u) = omega(p - v, u)).  Smoothing each hinge first and cutting again
yields a genuinely Legendrian sampled knot whose classical invariants rot
and tb this module computes numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ._kernels import gauss_linking, signed_crossing_sum
from .complexes import PolyhedralSurface, VertexStar, vertex_star
from .errors import LagpolyError
from .generators import VertexModelSpec, local_vertex_model
from .smoothing import HingeModel, _bump_and_grad
from .symplin import (LagrangianPlane, Vec4Q, hinge_normal_form, omega)

CONTACT_DEFECT_GATE = 1e-3
SPLICE_TOL = 1e-6
CLOSURE_TOL = 1e-8
CROSSING_MARGIN = 1e-6
PROJECTION_RETRIES = 50


def _fractions(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# float helpers


def _unit(v: np.ndarray) -> np.ndarray:
    n = np.linalg.norm(v)
    if n == 0.0:
        raise LagpolyError("DEGENERATE_SPAN", "cannot normalize zero vector")
    return v / n


def _omega_f(u: np.ndarray, v: np.ndarray) -> float:
    return (u[0] * v[1] - u[1] * v[0]) + (u[2] * v[3] - u[3] * v[2])


def _imul_f(q: np.ndarray) -> np.ndarray:
    return np.array([-q[1], q[0], -q[3], q[2]])


def _jmul_f(q: np.ndarray) -> np.ndarray:
    return np.array([-q[2], q[3], q[0], -q[1]])


def _kmul_f(q: np.ndarray) -> np.ndarray:
    return np.array([-q[3], -q[2], q[1], q[0]])


# ---------------------------------------------------------------------------
# exact distance preconditions


def _dist2_point_segment(v: Vec4Q, a: Vec4Q, b: Vec4Q) -> Fraction:
    d = b - a
    dd = d.dot(d)
    if dd == 0:
        w = v - a
        return w.dot(w)
    t = (v - a).dot(d) / dd
    t = max(Fraction(0), min(Fraction(1), t))
    w = v - (a + d.scale(t))
    return w.dot(w)


def _dist2_point_face(k: PolyhedralSurface, fi: int, v: Vec4Q) -> Fraction:
    """Exact squared distance from v to the closed face polygon."""
    pts = [k.vertices[i] for i in k.faces[fi]]
    best = min(_dist2_point_segment(v, pts[i], pts[(i + 1) % len(pts)])
               for i in range(len(pts)))
    # interior orthogonal projection, if it lands inside the polygon
    d1 = pts[1] - pts[0]
    d2 = None
    for p in pts[2:]:
        cand = p - pts[0]
        g = d1.dot(d1) * cand.dot(cand) - d1.dot(cand) ** 2
        if g != 0:
            d2 = cand
            break
    if d2 is None:
        return best
    w = v - pts[0]
    g11, g12, g22 = d1.dot(d1), d1.dot(d2), d2.dot(d2)
    det = g11 * g22 - g12 * g12
    a = (w.dot(d1) * g22 - w.dot(d2) * g12) / det
    b = (w.dot(d2) * g11 - w.dot(d1) * g12) / det
    # polygon chart coordinates of the vertices and of the projection
    chart = []
    for p in pts:
        u = p - pts[0]
        ca = (u.dot(d1) * g22 - u.dot(d2) * g12) / det
        cb = (u.dot(d2) * g11 - u.dot(d1) * g12) / det
        chart.append((ca, cb))
    inside = False
    x, y = a, b
    for i in range(len(chart)):
        (x1, y1), (x2, y2) = chart[i], chart[(i + 1) % len(chart)]
        if (y1 > y) != (y2 > y):
            xi = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
            if xi > x:
                inside = not inside
        elif y1 == y and y2 == y:
            if min(x1, x2) <= x <= max(x1, x2):
                inside = True
                break
    if inside:
        r = w - d1.scale(a) - d2.scale(b)
        best = min(best, r.dot(r))
    return best


# ---------------------------------------------------------------------------
# the PL sphere link


@dataclass
class GreatArc:
    """One face's trace on the sphere: a great-circle arc in the face plane
    from edge ray d1 to edge ray d2 (exact directions), with a float frame."""
    face: int
    plane: LagrangianPlane
    d1: Vec4Q
    d2: Vec4Q
    u1: np.ndarray = field(repr=False, default=None)
    u2: np.ndarray = field(repr=False, default=None)
    angle: float = 0.0

    def __post_init__(self):
        a = _unit(np.array(self.d1.floats()))
        braw = np.array(self.d2.floats())
        b = _unit(braw - (braw @ a) * a)
        self.u1, self.u2 = a, b
        self.angle = math.atan2(_unit(braw) @ b, _unit(braw) @ a)

    def point(self, theta: float, center: np.ndarray, delta: float) -> np.ndarray:
        return center + delta * (math.cos(theta) * self.u1
                                 + math.sin(theta) * self.u2)

    def tangent(self, theta: float) -> np.ndarray:
        return -math.sin(theta) * self.u1 + math.cos(theta) * self.u2


@dataclass
class PLLegendrianKnot:
    center: Vec4Q
    delta: Fraction
    arcs: List[GreatArc]
    star: VertexStar

    @property
    def k(self) -> int:
        return len(self.arcs)

    def corners(self) -> np.ndarray:
        c = np.array(self.center.floats())
        d = float(self.delta)
        return np.array([c + d * arc.u1 for arc in self.arcs])


def sphere_link(k: PolyhedralSurface, v: int, delta) -> PLLegendrianKnot:
    """Intersect the surface with the sphere of radius delta around vertex v.
    Exact preconditions: delta below the distance to every other vertex and
    every non-incident face.  One Legendrian great-circle arc per face."""
    delta = _fractions(delta)
    if delta <= 0:
        raise LagpolyError("BAD_PARAMETERS", "delta must be positive")
    star = vertex_star(k, v)
    d2 = delta * delta
    vv = k.vertices[v]
    for w, p in enumerate(k.vertices):
        if w != v and (p - vv).dot(p - vv) <= d2:
            raise LagpolyError("DELTA_TOO_LARGE",
                               f"vertex {w} within delta of vertex {v}")
    incident = set(star.faces)
    for fi in range(len(k.faces)):
        if fi not in incident and _dist2_point_face(k, fi, vv) <= d2:
            raise LagpolyError("DELTA_TOO_LARGE",
                               f"face {fi} within delta of vertex {v}")
    n = star.valency
    arcs = []
    for i in range(n):
        ray_in = star.rays[i - 1]   # edge shared with the previous face
        ray_out = star.rays[i]      # edge shared with the next face
        plane = star.planes[i]
        # exact Legendrian certificate: the translated face plane contains
        # every chord direction, so omega(p - v, T) is a multiple of
        # omega(d1, d2); checked at both corners and the chord midpoint.
        w12 = omega(ray_in, ray_out)
        if w12 != 0 or not plane.contains(ray_in) or not plane.contains(ray_out):
            raise LagpolyError("NOT_LEGENDRIAN",
                               f"face {star.faces[i]} arc fails the exact check")
        mid = ray_in + ray_out
        if omega(mid, ray_out - ray_in) != 0:
            raise LagpolyError("NOT_LEGENDRIAN", "chord midpoint check failed")
        arcs.append(GreatArc(star.faces[i], plane, ray_in, ray_out))
    return PLLegendrianKnot(center=vv, delta=delta, arcs=arcs, star=star)


def unknot_by_stick_bound(knot: PLLegendrianKnot) -> bool:
    """True certifies the unknot: a knot realized with at most 5 sticks is
    trivial (stick number of any nontrivial knot is at least 6).  False
    means no certificate, not knottedness."""
    return knot.k <= 5


# ---------------------------------------------------------------------------
# sampled knots


@dataclass
class SampledKnot:
    points: np.ndarray              # (n, 4) floats on the sphere
    tangents: np.ndarray            # (n, 4) unit tangents
    center: np.ndarray              # (4,) floats
    delta: float
    closure_defect: float
    contact_defect: float
    max_spacing: float
    planes: Optional[np.ndarray] = None   # (n, 2, 4) surface tangent frames

    def __post_init__(self):
        if self.closure_defect > CLOSURE_TOL:
            raise LagpolyError("SPLICE_GAP",
                               f"closure defect {self.closure_defect:.3e}")

    def __len__(self):
        return len(self.points)

    def reversed(self) -> "SampledKnot":
        pl = None if self.planes is None else self.planes[::-1].copy()
        return SampledKnot(self.points[::-1].copy(), -self.tangents[::-1],
                           self.center, self.delta, self.closure_defect,
                           self.contact_defect, self.max_spacing, pl)


def _contact_defect(points, tangents, center, delta) -> float:
    rel = (points - center) / delta
    return max(abs(_omega_f(r, t)) for r, t in zip(rel, tangents))


def standard_legendrian_unknot(n: int = 720) -> SampledKnot:
    """The analytic Legendrian great-circle unknot
    t -> (cos t, 0, 0, sin t) on the unit sphere (rot = 0, tb = -1)."""
    t = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    pts = np.stack([np.cos(t), 0 * t, 0 * t, np.sin(t)], axis=1)
    tan = np.stack([-np.sin(t), 0 * t, 0 * t, np.cos(t)], axis=1)
    center = np.zeros(4)
    spacing = float(np.max(np.linalg.norm(np.roll(pts, -1, 0) - pts, axis=1)))
    return SampledKnot(pts, tan, center, 1.0,
                       closure_defect=0.0,
                       contact_defect=_contact_defect(pts, tan, center, 1.0),
                       max_spacing=spacing)


# ---------------------------------------------------------------------------
# hinge-smoothed sphere link


class _SignedHinge:
    """Hinge parameters with a signed family parameter t; duck-typed for the
    g-evaluators in the smoothing module."""

    def __init__(self, s: Fraction, eps: float, t: float):
        self.s = s
        self.eps = eps
        self.t = t


def _g_and_grad(h: _SignedHinge, x2: float, y2: float):
    s = float(h.s)
    b, bx, by = _bump_and_grad(h.eps, x2, y2)
    g = y2 * (y2 - s * x2) - h.t * b
    return g, -s * y2 - h.t * bx, 2.0 * y2 - s * x2 - h.t * by


class _HingeChart:
    """Float chart of one hinge: normal-form map M (world offset -> normal
    coordinates) with inverse A, hinge slope s and the signed t."""

    def __init__(self, plane_a: LagrangianPlane, plane_b: LagrangianPlane,
                 interior_a: Vec4Q, interior_b: Vec4Q,
                 eps: float, t: float):
        nf = hinge_normal_form(plane_a, plane_b)
        self.s = nf.s
        self.M = np.array(nf.map.floats())
        self.A = np.array(nf.map.inverse().floats())
        # cross-section directions of the two face interiors
        ca = self.M @ np.array(interior_a.floats())
        cb = self.M @ np.array(interior_b.floats())
        w = _unit(ca[2:]) + _unit(cb[2:])
        sf = float(self.s)
        sector = w[1] * (w[1] - sf * w[0])
        if sector == 0.0:
            raise LagpolyError("BAD_INTERSECTION", "degenerate hinge sector")
        self.hinge = _SignedHinge(self.s, eps, t if sector > 0 else -t)

    def xsec_norm(self, p_rel: np.ndarray) -> float:
        q = self.M @ p_rel
        return math.hypot(q[2], q[3])


def _trace_hinge(chart: _HingeChart, start_rel: np.ndarray, delta: float,
                 step_max: float):
    """Trace {y1 = 0, g_t(x2, y2) = 0, |p|^2 = delta^2} in normal coordinates
    from a start point just outside the smoothing support until the curve
    exits the support on the other face.  Returns points and q-tangents.

    The step adapts to the cross-section radius: the curve's curvature
    radius near the hinge is of order sqrt(t), so fixed steps would either
    miss the turn or waste samples on the straight parts."""
    h = chart.hinge
    A = chart.A
    AA = A.T @ A
    d2 = delta * delta

    def embed(u):
        return np.array([u[0], 0.0, u[1], u[2]])

    def residual_jac(u):
        q = embed(u)
        g, gx, gy = _g_and_grad(h, u[1], u[2])
        sp = AA @ q
        f = np.array([g, q @ sp - d2])
        jac = np.array([
            [0.0, gx, gy],
            [2.0 * sp[0], 2.0 * sp[2], 2.0 * sp[3]],
        ])
        return f, jac

    def polish(u):
        for _ in range(40):
            f, jac = residual_jac(u)
            if abs(f[0]) <= 1e-13 and abs(f[1]) <= 1e-13 * max(1.0, d2):
                return u
            gram = jac @ jac.T
            try:
                lam = np.linalg.solve(gram, f)
            except np.linalg.LinAlgError:
                raise LagpolyError("SINGULAR_SAMPLE", "degenerate trace Jacobian")
            u = u - jac.T @ lam
        return u

    q0 = chart.M @ start_rel
    u = polish(np.array([q0[0], q0[2], q0[3]]))
    _, jac = residual_jac(u)
    tan = np.cross(jac[0], jac[1])
    nt = np.linalg.norm(tan)
    if nt < 1e-12:
        raise LagpolyError("SINGULAR_SAMPLE", "trace tangent degenerate")
    tan /= nt
    # orient toward the hinge: cross-section norm must decrease
    def xsec(u):
        return math.hypot(u[1], u[2])
    if xsec(u + 1e-6 * tan) > xsec(u):
        tan = -tan
    pts = [u.copy()]
    tans = [tan.copy()]
    entered = False
    r_gate = 1.05 * h.eps
    step_min = math.sqrt(abs(h.t)) / 20.0
    for _ in range(400000):
        step = max(step_min, min(step_max, 0.1 * xsec(u)))
        u = polish(u + step * tan)
        _, jac = residual_jac(u)
        nt_vec = np.cross(jac[0], jac[1])
        nt_vec /= np.linalg.norm(nt_vec)
        if nt_vec @ tan < 0:
            nt_vec = -nt_vec
        tan = nt_vec
        pts.append(u.copy())
        tans.append(tan.copy())
        r = xsec(u)
        if r < h.eps:
            entered = True
        if entered and r >= r_gate:
            break
    else:
        raise LagpolyError("SPLICE_GAP", "hinge trace did not exit the support")
    return np.array(pts), np.array(tans)


def _arc_support_anchor(arc: GreatArc, chart: _HingeChart, center, delta,
                        at_end: bool) -> float:
    """Arc parameter where the arc crosses cross-section radius 1.05*eps of
    the given hinge, scanning from the hinge-side endpoint."""
    gate = 1.05 * chart.hinge.eps

    def f(theta: float) -> float:
        return chart.xsec_norm(arc.point(theta, center, delta) - center) - gate

    m = 4000
    thetas = np.linspace(0.0, arc.angle, m)
    if at_end:
        thetas = thetas[::-1]
    if f(thetas[0]) >= 0.0:
        raise LagpolyError("SUPPORT_OVERLAP",
                           "smoothing support reaches past the hinge-side corner")
    prev = thetas[0]
    for theta in thetas[1:]:
        if f(theta) >= 0.0:
            lo, hi = prev, theta      # f(lo) < 0 <= f(hi)
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if f(mid) < 0.0:
                    lo = mid
                else:
                    hi = mid
            return hi
        prev = theta
    raise LagpolyError("SUPPORT_OVERLAP",
                       "smoothing support covers a whole face arc")


def smoothed_sphere_link(spec: VertexModelSpec, smooth, delta,
                         spacing: Optional[float] = None) -> SampledKnot:
    """Sphere link of the locally hinge-smoothed vertex model.

    `smooth` is one (eps, t) pair applied to all four hinges, or a sequence
    of four such pairs.  The hinge slope s is computed from the face planes.
    Face arcs are sampled exactly; inside each smoothing support the curve
    is traced numerically on the smoothed surface."""
    surf = local_vertex_model(spec)
    pl = sphere_link(surf, 0, _fractions(delta))
    star = pl.star
    n = star.valency
    deltaf = float(pl.delta)
    center = np.array(pl.center.floats())
    if spacing is None:
        spacing = deltaf / 150.0
    if isinstance(smooth, tuple):
        smooth = [smooth] * n
    if len(smooth) != n:
        raise LagpolyError("BAD_PARAMETERS", f"need {n} hinge parameters")
    for eps, t in smooth:
        if not (0.0 < eps < deltaf):
            raise LagpolyError("SUPPORT_OVERLAP",
                               "hinge eps must be positive and below delta")
        if not (0.0 < t <= 1.0):
            raise LagpolyError("BAD_PARAMETERS", "hinge t must lie in (0, 1]")

    # hinge i sits on star.rays[i], between face arc i and face arc i+1
    charts = []
    for i in range(n):
        face_a, face_b = i, (i + 1) % n
        interior_a = star.rays[i - 1] + star.rays[i]
        interior_b = star.rays[i] + star.rays[(i + 1) % n]
        eps, t = smooth[i]
        charts.append(_HingeChart(star.planes[face_a], star.planes[face_b],
                                  interior_a, interior_b, eps, t))

    # support anchors on every face arc: [exit of hinge i-1, entry of hinge i]
    entries, exits = [], []
    for i in range(n):
        arc = pl.arcs[i]
        theta_exit = _arc_support_anchor(arc, charts[i - 1], center, deltaf,
                                         at_end=False)
        theta_entry = _arc_support_anchor(arc, charts[i], center, deltaf,
                                          at_end=True)
        if theta_exit >= theta_entry - 1e-9:
            raise LagpolyError("SUPPORT_OVERLAP",
                               f"hinge supports overlap on face arc {i}")
        exits.append(theta_exit)
        entries.append(theta_entry)

    points, tangents, planes = [], [], []
    for i in range(n):
        arc = pl.arcs[i]
        # face arc segment outside both supports
        t0, t1 = exits[i], entries[i]
        m = max(2, int(math.ceil((t1 - t0) * deltaf / spacing)) + 1)
        frame = np.stack([arc.u1, arc.u2])
        for theta in np.linspace(t0, t1, m):
            points.append(arc.point(theta, center, deltaf))
            tangents.append(arc.tangent(theta))
            planes.append(frame)
        # hinge trace from this arc onto the next
        chart = charts[i]
        step = spacing / max(1.0, float(np.linalg.norm(chart.A, 2)))
        start_rel = points[-1] - center
        upts, utans = _trace_hinge(chart, start_rel, deltaf, step)
        qpts = np.stack([upts[:, 0], 0 * upts[:, 0], upts[:, 1], upts[:, 2]],
                        axis=1)
        wpts = qpts @ chart.A.T + center
        qtans = np.stack([utans[:, 0], 0 * utans[:, 0], utans[:, 1],
                          utans[:, 2]], axis=1)
        wtans = qtans @ chart.A.T
        for j in range(1, len(wpts)):
            points.append(wpts[j])
            tangents.append(_unit(wtans[j]))
            g, gx, gy = _g_and_grad(chart.hinge, upts[j][1], upts[j][2])
            p1 = _unit(chart.A @ np.array([1.0, 0.0, 0.0, 0.0]))
            p2 = chart.A @ np.array([0.0, 0.0, -gy, gx])
            p2 = _unit(p2 - (p2 @ p1) * p1)
            planes.append(np.stack([p1, p2]))
        # splice check: trace endpoint must sit on the next face arc
        arc2 = pl.arcs[(i + 1) % n]
        rel = points[-1] - center
        a, b = rel @ arc2.u1, rel @ arc2.u2
        gap = np.linalg.norm(rel - a * arc2.u1 - b * arc2.u2)
        theta_end = math.atan2(b, a)
        target = arc2.point(exits[(i + 1) % n], center, deltaf)
        if gap > SPLICE_TOL:
            raise LagpolyError("SPLICE_GAP",
                               f"hinge {i} endpoint off the next face plane"
                               f" by {gap:.3e}")
        # bridge exactly onto the next segment start
        seg = np.linspace(theta_end, exits[(i + 1) % n],
                          max(2, int(abs(exits[(i + 1) % n] - theta_end)
                                     * deltaf / spacing) + 2))
        for theta in seg[1:-1]:
            points.append(arc2.point(theta, center, deltaf))
            tangents.append(arc2.tangent(theta))
            planes.append(np.stack([arc2.u1, arc2.u2]))
        del target

    pts = np.array(points)
    tans = np.array(tangents)
    gaps = np.linalg.norm(np.roll(pts, -1, axis=0) - pts, axis=1)
    closure = float(gaps[-1]) if gaps[-1] > 2.0 * spacing else 0.0
    knot = SampledKnot(
        points=pts, tangents=tans, center=center, delta=deltaf,
        closure_defect=closure,
        contact_defect=_contact_defect(pts, tans, center, deltaf),
        max_spacing=float(gaps.max()),
        planes=np.array(planes))
    return knot


# ---------------------------------------------------------------------------
# invariants


def _contact_gate(knot: SampledKnot) -> None:
    if knot.contact_defect > CONTACT_DEFECT_GATE:
        raise LagpolyError(
            "CONTACT_DEFECT",
            f"contact-tangency defect {knot.contact_defect:.3e} exceeds "
            f"{CONTACT_DEFECT_GATE}; refusing invariant computation")


def rotation_number(knot: SampledKnot) -> int:
    """Winding number of the unit tangent in the global contact framing
    {j*x, k*x} of the standard contact structure on the sphere."""
    _contact_gate(knot)
    rel = (knot.points - knot.center) / knot.delta
    total = 0.0
    prev = None
    first = None
    for x, t in zip(rel, knot.tangents):
        a = t @ _jmul_f(x)
        b = t @ _kmul_f(x)
        r = math.hypot(a, b)
        if r < 1e-6:
            raise LagpolyError("FRAME_DEGENERATE",
                               "tangent orthogonal to the contact framing")
        ang = complex(a, b)
        if prev is not None:
            d = math.atan2((ang / prev).imag, (ang / prev).real)
            if abs(d) > 0.5 * math.pi:
                raise LagpolyError("NONINTEGRAL",
                                   "framing phase step too coarse")
            total += d
        else:
            first = ang
        prev = ang
    total += math.atan2((first / prev).imag, (first / prev).real)
    w = total / (2.0 * math.pi)
    if abs(w - round(w)) > 1e-3:
        raise LagpolyError("NONINTEGRAL", f"tangent winding {w} not integral")
    return int(round(w))


def _stereographic(rel: np.ndarray, pole: np.ndarray) -> np.ndarray:
    """Stereographic projection of unit-sphere points from the given unit
    pole onto its orthogonal 3-space."""
    basis = []
    for e in np.eye(4):
        w = e - (e @ pole) * pole
        for b in basis:
            w = w - (w @ b) * b
        nn = np.linalg.norm(w)
        if nn > 1e-8:
            basis.append(w / nn)
        if len(basis) == 3:
            break
    # orient the chart so the projection preserves the sphere's boundary
    # orientation (outward normal first); otherwise lk would flip sign
    if np.linalg.det(np.stack([-pole] + basis)) < 0:
        basis[2] = -basis[2]
    basis = np.stack(basis)
    denom = 1.0 - rel @ pole
    if np.any(np.abs(denom) < 1e-9):
        raise LagpolyError("POLE_TOO_CLOSE", "projection pole meets the curve")
    return (rel @ basis.T) / denom[:, None]


def _choose_pole(rel: np.ndarray, push: np.ndarray, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    best, best_d = None, -1.0
    cands = [e for e in np.vstack([np.eye(4), -np.eye(4)])]
    cands += [_unit(rng.standard_normal(4)) for _ in range(16)]
    for cand in cands:
        d = min(float(np.min(np.linalg.norm(rel - cand, axis=1))),
                float(np.min(np.linalg.norm(push - cand, axis=1))))
        if d > best_d:
            best, best_d = cand, d
    if best_d < 0.1:
        raise LagpolyError("POLE_TOO_CLOSE",
                           "no stereographic pole clear of the curve")
    return best


def linking_number(a3: np.ndarray, b3: np.ndarray, seed: int = 0) -> int:
    """Linking number of two closed 3-space polylines by signed crossings
    over a generic projection, cross-checked by the Gauss integral."""
    rng = np.random.default_rng(seed)
    for _ in range(PROJECTION_RETRIES):
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)))
        a = a3 @ q
        b = b3 @ q
        s, margin = signed_crossing_sum(a[:, :2], a[:, 2], b[:, :2], b[:, 2],
                                        tol=CROSSING_MARGIN)
        if margin > CROSSING_MARGIN:
            return int(round(s))
    raise LagpolyError("NONGENERIC_PROJECTION",
                       f"no generic projection in {PROJECTION_RETRIES} tries")


def thurston_bennequin(knot: SampledKnot, seed: int = 0,
                       eta: float = 1e-3) -> int:
    """tb as the linking number of the knot with its Reeb pushoff
    (displacement eta*delta along i*x, default delta/1000), after
    stereographic projection."""
    _contact_gate(knot)
    rel = (knot.points - knot.center) / knot.delta
    push = np.array([x + eta * _imul_f(x) for x in rel])
    pole = _choose_pole(rel, push, seed)
    a3 = _stereographic(rel, pole)
    b3 = _stereographic(push, pole)
    lk = linking_number(a3, b3, seed=seed)
    # consistency: an independent projection family must agree (the Gauss
    # integral is no cross-check here: the pushoff separation is below the
    # sample spacing, where the midpoint quadrature is unreliable)
    lk2 = linking_number(a3, b3, seed=seed + 104729)
    if lk2 != lk:
        raise LagpolyError("NONGENERIC_PROJECTION",
                           f"projection families disagree: {lk} vs {lk2}")
    return lk


# ---------------------------------------------------------------------------
# the conjecture experiment


@dataclass
class ExperimentRow:
    tau: Fraction
    epsilons: Tuple[int, int, int, int]
    sigma: int
    mu: Optional[int] = None           # all-counterclockwise connector loop
    mu_smooth: Optional[int] = None    # actual smoothed tangent-plane loop
    rot: Optional[int] = None
    tb: Optional[int] = None
    contact_defect: Optional[float] = None
    rot_equals_half_mu: Optional[bool] = None
    rot_equals_half_mu_smooth: Optional[bool] = None
    error: Optional[str] = None


def conjecture_experiment(taus: Sequence, eps_patterns: Sequence,
                          delta=Fraction(1, 2), hinge_t: float = 1e-3,
                          hinge_eps: Optional[float] = None,
                          spacing: Optional[float] = None,
                          seed: int = 0) -> List[ExperimentRow]:
    """Tabulate mu, rot and tb of the smoothed sphere link over a grid of
    vertex models.  Per-row failures are recorded, not raised."""
    from .maslov import smoothed_vertex_maslov, vertex_maslov

    rows: List[ExperimentRow] = []
    deltaf = float(_fractions(delta))
    if hinge_eps is None:
        hinge_eps = deltaf / 4.0
    for tau in taus:
        for eps in eps_patterns:
            spec = VertexModelSpec(tau=_fractions(tau), eps12=eps[0],
                                   eps23=eps[1], eps34=eps[2], eps41=eps[3])
            row = ExperimentRow(tau=spec.tau, epsilons=spec.epsilons,
                                sigma=spec.sigma)
            try:
                surf = local_vertex_model(spec)
                star = vertex_star(surf, 0)
                row.mu = vertex_maslov(star).index
                knot = smoothed_sphere_link(spec, (hinge_eps, hinge_t), delta,
                                            spacing=spacing)
                row.contact_defect = knot.contact_defect
                row.mu_smooth = smoothed_vertex_maslov(
                    [f.T for f in knot.planes]).index
                row.rot = rotation_number(knot)
                row.tb = thurston_bennequin(knot, seed=seed)
                row.rot_equals_half_mu = (2 * row.rot == row.mu)
                row.rot_equals_half_mu_smooth = (2 * row.rot == row.mu_smooth)
            except LagpolyError as exc:
                row.error = f"{exc.code}: {exc}"
            rows.append(row)
    return rows
