"""Valence-4 vertex normal form: reduce a star's four planes to the model
configuration span{e1,e2}, span{e1,f2}, span{f1,f2}, span{e2+tau e1, f1-tau f2},
extract tau, and read the edge-ray sign parameters.

The transformation diag(a, b, 1/a, 1/b) preserves the first three model
planes and rescales tau by a/b, so |tau| is gauge-dependent; deterministic
pivot choices make the reported tau reproducible, and sign data (epsilons,
sigma) are read against the mapped rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complexes import VertexStar
from .errors import LagpolyError
from .symplin import (LagrangianPlane, Symplectomorphism, Vec4Q,
                      intersect_planes, mat_inv, normalize_direction, omega,
                      parallel, rref)

Q = Fraction


@dataclass
class VertexNormalForm:
    map: Symplectomorphism
    tau: Fraction

    def model_planes(self):
        t = self.tau
        e1, f1 = Vec4Q(1, 0, 0, 0), Vec4Q(0, 1, 0, 0)
        e2, f2 = Vec4Q(0, 0, 1, 0), Vec4Q(0, 0, 0, 1)
        return [
            LagrangianPlane(e1, e2),
            LagrangianPlane(e1, f2),
            LagrangianPlane(f1, f2),
            LagrangianPlane(e2 + e1.scale(t), f1 - f2.scale(t)),
        ]


def _complement(plane: LagrangianPlane, line: Vec4Q) -> Vec4Q:
    red, pivots = rref([list(line), list(plane.b1), list(plane.b2)])
    if len(pivots) != 2:
        raise LagpolyError("DEGENERATE_SPAN", "line not in plane")
    for row in reversed(red):
        v = Vec4Q(*row)
        if not v.is_zero() and not parallel(v, line):
            return normalize_direction(v)
    raise LagpolyError("DEGENERATE_SPAN", "no complement")


def vertex_normal_form(star: VertexStar) -> VertexNormalForm:
    """Construct the adapted symplectic basis: e1 spans ell_12, f2 spans
    ell_23, e2 in L1 with omega(e2, f2) = 1, f1 in L3 with
    omega(e1, f1) = 1 and omega(e2, f1) = 0; then read tau from
    L4 cap L1 = span{e2 + tau e1} and cross-check against
    L4 cap L3 = span{f1 - tau f2}."""
    if star.valency != 4:
        raise LagpolyError("PATTERN_VIOLATION", "normal form needs valency 4")
    l1, l2, l3, l4 = star.planes
    e1v = normalize_direction(star.lines[0])   # ell_12
    f2v = normalize_direction(star.lines[1])   # ell_23
    u = _complement(l1, e1v)
    s = omega(u, f2v)
    if s == 0:
        raise LagpolyError("PATTERN_VIOLATION", "L1 not transverse to ell_23")
    e2v = u.scale(1 / s)
    w = _complement(l3, f2v)
    sw = omega(e1v, w)
    if sw == 0:
        raise LagpolyError("PATTERN_VIOLATION", "L3 not transverse to ell_12")
    f1v = (w + f2v.scale(-omega(e2v, w))).scale(1 / sw)
    b = [[e1v.coords()[i], f1v.coords()[i], e2v.coords()[i], f2v.coords()[i]]
         for i in range(4)]
    m = Symplectomorphism(mat_inv(b))

    if intersect_planes(l2, l4):
        raise LagpolyError("INVALID_TAU", "L2 and L4 intersect nontrivially (tau = 0)")

    # tau from L4 cap L1 in the new basis
    i41 = intersect_planes(l4, l1)
    i43 = intersect_planes(l4, l3)
    if len(i41) != 1 or len(i43) != 1:
        raise LagpolyError("PATTERN_VIOLATION", "L4 intersection pattern broken")
    v41 = m.apply(i41[0])   # should be ~ e2 + tau e1
    v43 = m.apply(i43[0])   # should be ~ f1 - tau f2
    if v41.x2 == 0 or v41.y1 != 0 or v41.y2 != 0:
        raise LagpolyError("INCONSISTENT", "L4 cap L1 not of model shape")
    tau1 = v41.x1 / v41.x2
    if v43.y1 == 0 or v43.x1 != 0 or v43.x2 != 0:
        raise LagpolyError("INCONSISTENT", "L4 cap L3 not of model shape")
    tau2 = -v43.y2 / v43.y1
    if tau1 != tau2:
        raise LagpolyError("INCONSISTENT",
                           f"tau readings disagree: {tau1} vs {tau2}")
    # A gauge shear e2 -> e2 + c e1, f1 -> f1 - c f2 fixes L1, L2, L3 and
    # translates tau by c, so the reported tau (its sign included) depends on
    # the deterministic pivots; a reading of 0 is a legal output here and
    # distinct from the L2 cap L4 != {0} failure checked above.
    return VertexNormalForm(m, tau1)


def sign_parameters(star: VertexStar, nf: VertexNormalForm):
    """Push the star's edge rays through nf.map and read each sign against
    the model rays eps12 e1, eps23 f2, eps34 (f1 - tau f2),
    eps41 (e2 + tau e1).  Returns (eps12, eps23, eps34, eps41, sigma)."""
    t = nf.tau
    model = [
        Vec4Q(1, 0, 0, 0),            # e1
        Vec4Q(0, 0, 0, 1),            # f2
        Vec4Q(0, 1, 0, -t),           # f1 - tau f2
        Vec4Q(t, 0, 1, 0),            # e2 + tau e1
    ]
    eps = []
    for ray, mv in zip(star.rays, model):
        img = nf.map.apply(ray)
        if not parallel(img, mv):
            raise LagpolyError("RAY_MISMATCH",
                               "mapped edge ray is not parallel to the model direction")
        # sign of the scalar factor img = c * mv
        c = None
        for a, b2 in zip(img, mv):
            if b2 != 0:
                c = a / b2
                break
        if c == 0:
            raise LagpolyError("RAY_MISMATCH", "zero ray")
        eps.append(1 if c > 0 else -1)
    sigma = eps[0] * eps[1] * eps[2] * eps[3]
    return (*eps, sigma)
