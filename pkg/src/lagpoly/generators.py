"""Constructors for the example surfaces: products of polygonal curves and
the truncated valence-4 vertex model K(tau; eps)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .complexes import PolyhedralSurface
from .errors import LagpolyError
from .symplin import Vec4Q

Q = Fraction


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# polygonal curves in a symplectic R^2 factor


def _orient2(a, b, c) -> int:
    d = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (d > 0) - (d < 0)


def _on_segment(a, b, p) -> bool:
    if _orient2(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_intersect(a, b, c, d) -> bool:
    """Exact proper-or-improper intersection test for closed segments."""
    o1, o2 = _orient2(a, b, c), _orient2(a, b, d)
    o3, o4 = _orient2(c, d, a), _orient2(c, d, b)
    if o1 != o2 and o3 != o4:
        return True
    return (_on_segment(a, b, c) or _on_segment(a, b, d)
            or _on_segment(c, d, a) or _on_segment(c, d, b))


class PolygonalCurve:
    """Planar polygonal curve with exact rational points.  Closed curves
    must be simple polygons (exact segment tests)."""

    def __init__(self, points, closed: bool):
        self.points = [(_q(x), _q(y)) for x, y in points]
        self.closed = bool(closed)
        n = len(self.points)
        if n < 2 or (closed and n < 3):
            raise LagpolyError("DEGENERATE_CURVE", "too few points")
        segs = self.segments()
        for (a, b) in segs:
            if a == b:
                raise LagpolyError("DEGENERATE_CURVE", "repeated consecutive point")
        # simplicity: non-adjacent segments must not meet
        m = len(segs)
        for i in range(m):
            for j in range(i + 1, m):
                adjacent = (j == i + 1) or (self.closed and i == 0 and j == m - 1)
                if adjacent:
                    continue
                if _segments_intersect(*segs[i], *segs[j]):
                    raise LagpolyError("NOT_SIMPLE", "curve intersects itself")

    def segments(self):
        pts = self.points
        segs = [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
        if self.closed:
            segs.append((pts[-1], pts[0]))
        return segs

    @property
    def num_edges(self) -> int:
        return len(self.points) if self.closed else len(self.points) - 1


def regular_polygon(n: int, scale=1) -> PolygonalCurve:
    """Simple closed rational n-gon approximating a circle of the given
    radius.  Points are exactly on the circle (rational points via the
    tangent half-angle), at approximately equal angles."""
    if n < 3:
        raise LagpolyError("DEGENERATE_CURVE", "need n >= 3")
    scale = _q(scale)
    pts = []
    for k in range(n):
        theta = 2 * math.pi * k / n
        if 2 * k == n:
            pts.append((-scale, Q(0)))
            continue
        t = Q(math.tan(theta / 2)).limit_denominator(10 ** 6)
        den = 1 + t * t
        pts.append((scale * (1 - t * t) / den, scale * 2 * t / den))
    return PolygonalCurve(pts, closed=True)


def product_surface(p: PolygonalCurve, q: PolygonalCurve) -> PolyhedralSurface:
    """K = P x Q with parallelogram faces e_P x e_Q; all faces Lagrangian.
    Closed x closed gives a torus."""
    np_, nq = len(p.points), len(q.points)
    vertices = []
    index = {}
    for i, (x1, y1) in enumerate(p.points):
        for j, (x2, y2) in enumerate(q.points):
            index[(i, j)] = len(vertices)
            vertices.append(Vec4Q(x1, y1, x2, y2))
    faces = []
    ep = p.num_edges
    eq = q.num_edges
    for i in range(ep):
        i2 = (i + 1) % np_
        for j in range(eq):
            j2 = (j + 1) % nq
            faces.append([index[(i, j)], index[(i2, j)],
                          index[(i2, j2)], index[(i, j2)]])
    meta = {"kind": "product", "closed": p.closed and q.closed}
    return PolyhedralSurface(vertices, faces, meta)


# ---------------------------------------------------------------------------
# the valence-4 vertex model


@dataclass(frozen=True)
class VertexModelSpec:
    tau: Fraction
    eps12: int = 1
    eps23: int = 1
    eps34: int = 1
    eps41: int = 1
    radius: Fraction = Q(1)

    def __post_init__(self):
        object.__setattr__(self, "tau", _q(self.tau))
        object.__setattr__(self, "radius", _q(self.radius))
        if self.tau == 0:
            raise LagpolyError("INVALID_TAU", "tau must be nonzero")
        if self.radius <= 0:
            raise LagpolyError("INVALID_RADIUS", "truncation radius must be positive")
        for e in self.epsilons:
            if e not in (1, -1):
                raise LagpolyError("INVALID_SIGN", "epsilons must be +-1")

    @property
    def epsilons(self):
        return (self.eps12, self.eps23, self.eps34, self.eps41)

    @property
    def sigma(self) -> int:
        return self.eps12 * self.eps23 * self.eps34 * self.eps41


def model_rays(spec: VertexModelSpec):
    """Edge direction vectors a12, a23, a34, a41 of the local model."""
    t = spec.tau
    a12 = Vec4Q(1, 0, 0, 0).scale(spec.eps12)                    # eps12 * e1
    a23 = Vec4Q(0, 0, 0, 1).scale(spec.eps23)                    # eps23 * f2
    a34 = Vec4Q(0, 1, 0, -t).scale(spec.eps34)                   # eps34 * (f1 - tau f2)
    a41 = Vec4Q(t, 0, 1, 0).scale(spec.eps41)                    # eps41 * (e2 + tau e1)
    return a12, a23, a34, a41


def local_vertex_model(spec: VertexModelSpec) -> PolyhedralSurface:
    """The four cone faces F_1..F_4 of the local model, truncated to the
    quadrilaterals {s a + t a' : 0 <= s, t <= R} in the ray coordinates.
    The interior vertex is the origin with valency 4."""
    a12, a23, a34, a41 = model_rays(spec)
    r = spec.radius
    # face i is the cone on (a_{i-1,i}, a_{i,i+1})
    cones = [(a41, a12), (a12, a23), (a23, a34), (a34, a41)]
    origin = Vec4Q(0, 0, 0, 0)
    vertices = [origin]
    index = {origin.coords(): 0}

    def vid(v: Vec4Q) -> int:
        key = v.coords()
        if key not in index:
            index[key] = len(vertices)
            vertices.append(v)
        return index[key]

    faces = []
    for a, b in cones:
        pa, pab, pb = a.scale(r), (a + b).scale(r), b.scale(r)
        faces.append([0, vid(pa), vid(pab), vid(pb)])
    meta = {"kind": "vertex-model", "tau": str(spec.tau),
            "epsilons": list(spec.epsilons), "radius": str(spec.radius)}
    return PolyhedralSurface(vertices, faces, meta)
