"""Polyhedral surfaces embedded in R^4, their dual complexes and vertex stars.

A surface is a list of Vec4Q vertices plus faces given as cyclic
vertex-index lists.  Validation is exact: face planarity, Lagrangian
support planes, and the topological surface condition (every vertex link
is a single cycle, or a single arc on the boundary).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import LagpolyError
from .symplin import (LagrangianPlane, Vec4Q, normalize_direction, omega,
                      parallel, rref)


class PolyhedralSurface:
    """Immutable polyhedral surface: vertices, faces, derived edge incidence."""

    def __init__(self, vertices, faces, metadata=None):
        self.vertices = list(vertices)
        self.faces = [list(f) for f in faces]
        self.metadata = dict(metadata or {})
        nv = len(self.vertices)
        for f in self.faces:
            if len(f) < 3:
                raise LagpolyError("MALFORMED_INDEX", f"face with {len(f)} vertices")
            for idx in f:
                if not (0 <= idx < nv):
                    raise LagpolyError("MALFORMED_INDEX", f"vertex index {idx} out of range")
        # edge -> list of (face index, position of edge start in the cycle)
        self.edge_faces: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for fi, f in enumerate(self.faces):
            for k in range(len(f)):
                a, b = f[k], f[(k + 1) % len(f)]
                if a == b:
                    raise LagpolyError("MALFORMED_INDEX", "repeated consecutive vertex in face")
                key = (min(a, b), max(a, b))
                self.edge_faces.setdefault(key, []).append((fi, k))
        self._planes: dict[int, LagrangianPlane] = {}

    @property
    def edges(self):
        return sorted(self.edge_faces)

    def face_plane_basis(self, fi: int):
        """Exact basis (d1, d2) of the linear span of face fi's directions,
        or raises if the face is not planar / degenerate."""
        f = self.faces[fi]
        p0 = self.vertices[f[0]]
        diffs = [list(self.vertices[idx] - p0) for idx in f[1:]]
        red, pivots = rref(diffs)
        if len(pivots) != 2:
            raise LagpolyError("DEGENERATE_FACE",
                               f"face {fi} spans dimension {len(pivots)}, need 2")
        return Vec4Q(*red[0]), Vec4Q(*red[1])

    def face_plane(self, fi: int) -> LagrangianPlane:
        if fi not in self._planes:
            d1, d2 = self.face_plane_basis(fi)
            self._planes[fi] = LagrangianPlane(d1, d2)
        return self._planes[fi]

    def face_is_planar(self, fi: int) -> bool:
        f = self.faces[fi]
        p0 = self.vertices[f[0]]
        diffs = [list(self.vertices[idx] - p0) for idx in f[1:]]
        _, pivots = rref(diffs)
        return len(pivots) == 2

    def face_is_lagrangian(self, fi: int) -> bool:
        d1, d2 = self.face_plane_basis(fi)
        return omega(d1, d2) == 0

    def face_has_collinear_triple(self, fi: int) -> bool:
        f = self.faces[fi]
        n = len(f)
        for k in range(n):
            a = self.vertices[f[k]]
            b = self.vertices[f[(k + 1) % n]]
            c = self.vertices[f[(k + 2) % n]]
            if parallel(b - a, c - b):
                return True
        return False

    def faces_at_vertex(self, v: int):
        return [fi for fi, f in enumerate(self.faces) if v in f]

    def _link_components(self, v: int):
        """Connected components of the link graph at v: faces are link edges
        joining the two neighbor vertices of v in the face cycle.  Returns
        (components, is_cycle_flags)."""
        incident = self.faces_at_vertex(v)
        # link edge of face fi at v: unordered pair of neighbors of v
        adj: dict[int, list[int]] = {}
        for fi in incident:
            f = self.faces[fi]
            k = f.index(v)
            prev, nxt = f[k - 1], f[(k + 1) % len(f)]
            adj.setdefault(prev, []).append(fi)
            adj.setdefault(nxt, []).append(fi)
        seen_faces = set()
        components = []
        cycles = []
        for start in incident:
            if start in seen_faces:
                continue
            comp = {start}
            seen_faces.add(start)
            frontier = [start]
            while frontier:
                fi = frontier.pop()
                f = self.faces[fi]
                k = f.index(v)
                for w in (f[k - 1], f[(k + 1) % len(f)]):
                    for fj in adj[w]:
                        if fj not in comp:
                            comp.add(fj)
                            seen_faces.add(fj)
                            frontier.append(fj)
            # cycle iff every link vertex in the component has degree 2
            verts = set()
            for fi in comp:
                f = self.faces[fi]
                k = f.index(v)
                verts.update((f[k - 1], f[(k + 1) % len(f)]))
            degs = [len(adj[w]) for w in verts]
            components.append(sorted(comp))
            cycles.append(all(d == 2 for d in degs))
        return components, cycles

    def vertex_link_kind(self, v: int) -> str:
        """"circle", "arc" (boundary vertex), or "bad"."""
        comps, cycles = self._link_components(v)
        if len(comps) != 1:
            return "bad"
        if cycles[0]:
            return "circle"
        # single component, all degrees 1 or 2 with exactly two degree-1 ends
        incident = comps[0]
        adj: dict[int, int] = {}
        for fi in incident:
            f = self.faces[fi]
            k = f.index(v)
            for w in (f[k - 1], f[(k + 1) % len(f)]):
                adj[w] = adj.get(w, 0) + 1
        ends = [w for w, d in adj.items() if d == 1]
        ok = len(ends) == 2 and all(d <= 2 for d in adj.values())
        return "arc" if ok else "bad"


@dataclass
class ValidationReport:
    face_planar: list[bool]
    face_lagrangian: list[bool]
    face_nondegenerate: list[bool]
    vertex_link_ok: list[bool]
    edge_face_counts_ok: bool
    has_boundary: bool
    passed: bool

    def summary(self) -> str:
        lines = [
            f"faces: {len(self.face_planar)} "
            f"(planar {sum(self.face_planar)}, lagrangian {sum(self.face_lagrangian)})",
            f"vertices: {len(self.vertex_link_ok)} (links ok {sum(self.vertex_link_ok)})",
            f"boundary: {self.has_boundary}",
            f"pass: {self.passed}",
        ]
        return "\n".join(lines)


def validate_surface(k: PolyhedralSurface) -> ValidationReport:
    """Exact validation: planarity and Lagrangian support plane per face,
    no collinear vertex triples, each edge on 1 or 2 faces, every vertex
    link a circle or (on the boundary) an arc."""
    planar, lagr, nondeg = [], [], []
    for fi in range(len(k.faces)):
        p = k.face_is_planar(fi)
        planar.append(p)
        lagr.append(p and k.face_is_lagrangian(fi))
        nondeg.append(p and not k.face_has_collinear_triple(fi))
    counts_ok = all(1 <= len(fs) <= 2 for fs in k.edge_faces.values())
    has_boundary = any(len(fs) == 1 for fs in k.edge_faces.values())
    link_ok = []
    for v in range(len(k.vertices)):
        kind = k.vertex_link_kind(v)
        link_ok.append(kind == "circle" or (kind == "arc" and has_boundary))
    passed = (all(planar) and all(lagr) and all(nondeg)
              and counts_ok and all(link_ok))
    return ValidationReport(planar, lagr, nondeg, link_ok, counts_ok,
                            has_boundary, passed)


# ---------------------------------------------------------------------------
# vertex stars


@dataclass
class VertexStar:
    """Cyclically ordered faces around an interior vertex with their tangent
    planes, intersection lines and edge rays."""
    vertex_index: int
    vertex: Vec4Q
    faces: list[int]                    # face indices in cyclic link order
    planes: list[LagrangianPlane]       # L_i
    lines: list[Vec4Q]                  # ell_{i,i+1}, canonical direction
    rays: list[Vec4Q]                   # a_{i,i+1}, exact edge direction out of v

    @property
    def valency(self) -> int:
        return len(self.faces)


def _cyclic_face_order(k: PolyhedralSurface, v: int):
    """Walk the link cycle by shared-edge adjacency.  Starts at the lowest
    incident face index; first step goes to the lower-indexed neighbor."""
    incident = k.faces_at_vertex(v)
    if not incident:
        raise LagpolyError("MALFORMED_INDEX", f"vertex {v} has no incident faces")
    # neighbors of each face across edges at v
    def edge_neighbors(fi):
        f = k.faces[fi]
        pos = f.index(v)
        out = []
        for w in (f[pos - 1], f[(pos + 1) % len(f)]):
            key = (min(v, w), max(v, w))
            for fj, _ in k.edge_faces[key]:
                if fj != fi:
                    out.append((w, fj))
        return out

    start = min(incident)
    nbrs = edge_neighbors(start)
    if len(nbrs) != 2:
        raise LagpolyError("PATTERN_VIOLATION",
                           f"vertex {v} link is not a cycle at face {start}")
    nbrs.sort(key=lambda t: t[1])
    order = [start]
    shared = [nbrs[0][0]]  # vertex across which we step to the next face
    cur, prev_shared = nbrs[0][1], nbrs[0][0]
    while cur != start:
        order.append(cur)
        step = [t for t in edge_neighbors(cur) if t[0] != prev_shared]
        if len(step) != 1:
            raise LagpolyError("PATTERN_VIOLATION",
                               f"vertex {v} link is not a single cycle")
        shared.append(step[0][0])
        prev_shared = step[0][0]
        cur = step[0][1]
    if len(order) != len(incident):
        raise LagpolyError("PATTERN_VIOLATION", f"vertex {v} link is not a single cycle")
    return order, shared


def vertex_star(k: PolyhedralSurface, v: int) -> VertexStar:
    """Star of an interior vertex: faces in cyclic link order, tangent
    planes, edge lines and edge rays.  Raises PATTERN_VIOLATION if the
    cyclic intersection pattern fails."""
    order, shared = _cyclic_face_order(k, v)
    planes = [k.face_plane(fi) for fi in order]
    n = len(order)
    rays = [k.vertices[shared[i]] - k.vertices[v] for i in range(n)]
    lines = []
    for i in range(n):
        li, lj = planes[i], planes[(i + 1) % n]
        if li == lj:
            raise LagpolyError("PATTERN_VIOLATION",
                               f"consecutive planes equal at vertex {v}")
        inter = _intersection_line(li, lj)
        if inter is None:
            raise LagpolyError("PATTERN_VIOLATION",
                               f"consecutive planes at vertex {v} do not meet in a line")
        if not parallel(inter, rays[i]):
            raise LagpolyError("PATTERN_VIOLATION",
                               f"edge ray at vertex {v} not on the plane intersection line")
        lines.append(inter)
    if n == 4:
        from .symplin import intersect_planes
        for i in range(2):
            if intersect_planes(planes[i], planes[i + 2]):
                raise LagpolyError("PATTERN_VIOLATION",
                                   f"opposite planes at vertex {v} intersect nontrivially")
    return VertexStar(v, k.vertices[v], order, planes, lines, rays)


def _intersection_line(p: LagrangianPlane, q: LagrangianPlane):
    from .symplin import intersect_planes
    inter = intersect_planes(p, q)
    if len(inter) != 1:
        return None
    return normalize_direction(inter[0])


def star_from_planes(planes, rays, vertex=None) -> VertexStar:
    """Synthetic star from explicit planes and rays (test support and
    conjugation experiments).  Checks the same intersection pattern."""
    v = vertex if vertex is not None else Vec4Q(0, 0, 0, 0)
    n = len(planes)
    lines = []
    for i in range(n):
        if planes[i] == planes[(i + 1) % n]:
            raise LagpolyError("PATTERN_VIOLATION", "consecutive planes equal")
        line = _intersection_line(planes[i], planes[(i + 1) % n])
        if line is None:
            raise LagpolyError("PATTERN_VIOLATION", "consecutive planes do not meet in a line")
        if rays is not None and not parallel(line, rays[i]):
            raise LagpolyError("PATTERN_VIOLATION", "ray not on intersection line")
        lines.append(line)
    if n == 4:
        from .symplin import intersect_planes
        for i in range(2):
            if intersect_planes(planes[i], planes[i + 2]):
                raise LagpolyError("PATTERN_VIOLATION", "opposite planes intersect")
    return VertexStar(-1, v, list(range(n)), list(planes), lines,
                      list(rays) if rays is not None else lines[:])


# ---------------------------------------------------------------------------
# dual complex


@dataclass
class DualComplex:
    """Dual of the face/edge/vertex incidence: dual vertices are faces of K,
    dual edges are interior edges, dual 2-cells are interior vertices with
    their cyclic face order."""
    dual_vertices: list[int]                       # face indices of K
    dual_edges: list[tuple[int, int]]              # (face, face) per interior edge
    dual_cells: dict[int, list[int]]               # vertex -> cyclic face list


def dual_complex(k: PolyhedralSurface) -> DualComplex:
    dual_vertices = list(range(len(k.faces)))
    dual_edges = []
    for key in sorted(k.edge_faces):
        fs = [fi for fi, _ in k.edge_faces[key]]
        if len(fs) == 2:
            dual_edges.append((min(fs), max(fs)))
    cells = {}
    for v in range(len(k.vertices)):
        if not k.faces_at_vertex(v):
            continue
        if k.vertex_link_kind(v) == "circle":
            order, _ = _cyclic_face_order(k, v)
            cells[v] = order
    return DualComplex(dual_vertices, dual_edges, cells)
