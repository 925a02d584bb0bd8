"""Local primitive systems f_F with df_F = lambda|_F and the associated
cocycle on the dual complex.

On a Lagrangian face the pullback of the radial primitive
lambda = 1/2 sum(x_i dy_i - y_i dx_i) to the affine chart
p = p0 + s d1 + t d2 has constant coefficients, so each face primitive is
the quadratic  f(s, t) = cs*s + ct*t + cst*s*t  with cst = 0; the cross
coefficient is kept so non-Lagrangian inputs fail loudly instead of
silently integrating a non-closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import DualComplex, PolyhedralSurface, dual_complex
from .errors import LagpolyError
from .symplin import Vec4Q, omega

Q = Fraction


@dataclass
class FacePrimitive:
    base: Vec4Q          # chart origin: first vertex of the face
    d1: Vec4Q            # chart directions (exact plane basis)
    d2: Vec4Q
    cs: Fraction         # f = c0 + cs*s + ct*t + cst*s*t
    ct: Fraction
    cst: Fraction
    c0: Fraction

    def _solver(self):
        """Cached 2x2 exact solve for (s, t): two coordinate rows of
        [d1 d2] with nonzero determinant."""
        cached = getattr(self, "_solve_cache", None)
        if cached is not None:
            return cached
        a, b = self.d1.coords(), self.d2.coords()
        for i in range(4):
            for j in range(i + 1, 4):
                det = a[i] * b[j] - a[j] * b[i]
                if det != 0:
                    object.__setattr__(self, "_solve_cache", (i, j, det))
                    return i, j, det
        raise LagpolyError("POINT_OFF_PLANE", "degenerate chart directions")

    def chart_coords(self, p: Vec4Q):
        """Exact (s, t) with p = base + s d1 + t d2; raises if p is off the
        face plane.  Results are cached per point (the chart is shared by
        gauge-shifted copies)."""
        cache = getattr(self, "_chart_cache", None)
        if cache is None:
            cache = {}
            object.__setattr__(self, "_chart_cache", cache)
        key = p.coords()
        hit = cache.get(key)
        if hit is not None:
            return hit
        i, j, det = self._solver()
        a, b = self.d1.coords(), self.d2.coords()
        w = tuple(pc - bc for pc, bc in zip(p.coords(), self.base.coords()))
        s = (w[i] * b[j] - w[j] * b[i]) / det
        t = (a[i] * w[j] - a[j] * w[i]) / det
        # the remaining coordinates must match exactly
        for m in range(4):
            if m != i and m != j and w[m] != s * a[m] + t * b[m]:
                raise LagpolyError("POINT_OFF_PLANE",
                                   "point not in the face plane")
        cache[key] = (s, t)
        return s, t

    def value_at(self, p: Vec4Q) -> Fraction:
        s, t = self.chart_coords(p)
        return self.c0 + self.cs * s + self.ct * t + self.cst * s * t

    def shifted(self, a: Fraction) -> "FacePrimitive":
        fp = FacePrimitive(self.base, self.d1, self.d2,
                           self.cs, self.ct, self.cst, self.c0 + a)
        cache = getattr(self, "_chart_cache", None)
        if cache is not None:
            object.__setattr__(fp, "_chart_cache", cache)
        return fp


@dataclass
class PrimitiveSystem:
    surface: PolyhedralSurface
    primitives: list[FacePrimitive]

    def shifted(self, shifts) -> "PrimitiveSystem":
        """Gauge shift: add the rational constant shifts[F] to each f_F."""
        prims = [fp.shifted(Q(shifts[i])) for i, fp in enumerate(self.primitives)]
        return PrimitiveSystem(self.surface, prims)


def solve_primitives(k: PolyhedralSurface) -> PrimitiveSystem:
    """Integrate lambda|_F symbolically on each face, normalized so that
    f_F vanishes at the face's first vertex."""
    prims = []
    for fi, f in enumerate(k.faces):
        d1, d2 = k.face_plane_basis(fi)
        p0 = k.vertices[f[0]]
        # lambda at p0 + s d1 + t d2 on (d1, d2):
        #   A(s,t) = 1/2 omega(p0, d1) + (t/2) omega(d2, d1)
        #   B(s,t) = 1/2 omega(p0, d2) + (s/2) omega(d1, d2)
        w12 = omega(d1, d2)
        assert w12 == 0, "face plane is not Lagrangian; validate first"
        cs = omega(p0, d1) / 2
        ct = omega(p0, d2) / 2
        prims.append(FacePrimitive(p0, d1, d2, cs, ct, Q(0), Q(0)))
    return PrimitiveSystem(k, prims)


@dataclass
class Cocycle:
    """Per oriented dual edge (F, F'): the rational jump c(F, F').  Keyed by
    the underlying K-edge (vertex pair) with the stored orientation
    (low face, high face)."""
    surface: PolyhedralSurface
    values: dict[tuple[int, int], Fraction]   # edge key -> c(Flow, Fhigh)
    edge_pairs: dict[tuple[int, int], tuple[int, int]]  # edge key -> (Flow, Fhigh)

    def value(self, edge_key, f_from: int, f_to: int) -> Fraction:
        lo, hi = self.edge_pairs[edge_key]
        v = self.values[edge_key]
        if (f_from, f_to) == (lo, hi):
            return v
        if (f_from, f_to) == (hi, lo):
            return -v
        raise LagpolyError("MALFORMED_INDEX", "faces do not match the dual edge")


def cocycle(k: PolyhedralSurface, ps: PrimitiveSystem) -> Cocycle:
    """c(F, F') = (f_F' - f_F)|_{F cap F'}; constancy along the edge is
    certified by exact equality at both endpoints."""
    values = {}
    pairs = {}
    for key in sorted(k.edge_faces):
        fs = sorted(fi for fi, _ in k.edge_faces[key])
        if len(fs) != 2:
            continue
        lo, hi = fs
        pa, pb = k.vertices[key[0]], k.vertices[key[1]]
        da = ps.primitives[hi].value_at(pa) - ps.primitives[lo].value_at(pa)
        db = ps.primitives[hi].value_at(pb) - ps.primitives[lo].value_at(pb)
        if da != db:
            raise LagpolyError("NOT_CONSTANT",
                               f"f_F' - f_F is not constant on edge {key}")
        values[key] = da
        pairs[key] = (lo, hi)
    return Cocycle(k, values, pairs)


def _edge_lookup(k: PolyhedralSurface):
    """vertex -> {sorted interior face pair -> edge key}."""
    lookup = {}
    for key, faces in k.edge_faces.items():
        fs = sorted(fi for fi, _ in faces)
        if len(fs) != 2:
            continue
        for v in key:
            lookup.setdefault(v, {})[tuple(fs)] = key
    return lookup


def _vertex_cycle_residual(k: PolyhedralSurface, c: Cocycle, v: int, order,
                           lookup=None) -> Fraction:
    if lookup is None:
        lookup = _edge_lookup(k)
    total = Q(0)
    at_v = lookup.get(v, {})
    n = len(order)
    for i in range(n):
        fa, fb = order[i], order[(i + 1) % n]
        key = at_v.get((fa, fb) if fa < fb else (fb, fa))
        if key is None:
            raise LagpolyError("MALFORMED_INDEX", "no shared edge for consecutive faces")
        total += c.value(key, fa, fb)
    return total


def verify_cocycle(k: PolyhedralSurface, c: Cocycle):
    """Cocycle check: for every interior vertex the cyclic sum of c
    around the dual 2-cell is exactly zero.  Returns (ok, residuals)."""
    dc = dual_complex(k)
    lookup = _edge_lookup(k)
    residuals = {}
    for v, order in dc.dual_cells.items():
        residuals[v] = _vertex_cycle_residual(k, c, v, order, lookup)
    ok = all(r == 0 for r in residuals.values())
    return ok, residuals


def class_equal(c1: Cocycle, c2: Cocycle, k: PolyhedralSurface) -> bool:
    """True iff c1 - c2 is a coboundary: the system a_F' - a_F = (c1-c2)(F,F')
    over the dual graph is consistent (spanning-tree propagation, exact)."""
    for c in (c1, c2):
        ok, _ = verify_cocycle(k, c)
        if not ok:
            raise LagpolyError("NOT_COCYCLE", "input fails the cocycle condition")
    diff = {key: c1.values[key] - c2.values[key] for key in c1.values}
    # dual graph adjacency
    adj: dict[int, list[tuple[int, tuple[int, int]]]] = {}
    for key, (lo, hi) in c1.edge_pairs.items():
        adj.setdefault(lo, []).append((hi, key))
        adj.setdefault(hi, []).append((lo, key))
    a: dict[int, Fraction] = {}
    for root in range(len(k.faces)):
        if root in a or root not in adj:
            a.setdefault(root, Q(0))
            continue
        a[root] = Q(0)
        stack = [root]
        while stack:
            f = stack.pop()
            for g, key in adj[f]:
                lo, hi = c1.edge_pairs[key]
                d = diff[key] if (f, g) == (lo, hi) else -diff[key]
                if g not in a:
                    a[g] = a[f] + d
                    stack.append(g)
    # consistency on every dual edge
    for key, (lo, hi) in c1.edge_pairs.items():
        if a[hi] - a[lo] != diff[key]:
            return False
    return True
