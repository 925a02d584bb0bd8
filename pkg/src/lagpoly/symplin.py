"""Exact linear symplectic algebra on R^4.

Coordinates are ordered (x1, y1, x2, y2) and the symplectic form is
omega = dx1 ^ dy1 + dx2 ^ dy2.  The standard basis vectors are

    e1 = (1,0,0,0)   f1 = (0,1,0,0)
    e2 = (0,0,1,0)   f2 = (0,0,0,1)

so omega(e_i, f_j) = delta_ij.  The compatible complex structure J sends
e_i -> f_i, f_i -> -e_i, i.e. J(x1,y1,x2,y2) = (-y1, x1, -y2, x2).

All decisions (isotropy, intersections, normal forms) are made in exact
rational arithmetic (fractions.Fraction).  Floating representations are
derived caches for the numeric modules.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import LagpolyError

Q = Fraction


def _q(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class Vec4Q:
    """A point or tangent vector of R^4 with exact rational coordinates."""

    __slots__ = ("x1", "y1", "x2", "y2")

    def __init__(self, x1, y1, x2, y2):
        self.x1 = _q(x1)
        self.y1 = _q(y1)
        self.x2 = _q(x2)
        self.y2 = _q(y2)

    def coords(self):
        return (self.x1, self.y1, self.x2, self.y2)

    def __iter__(self):
        return iter(self.coords())

    def __add__(self, other):
        return Vec4Q(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return Vec4Q(*(a - b for a, b in zip(self, other)))

    def __neg__(self):
        return Vec4Q(*(-a for a in self))

    def scale(self, c):
        c = _q(c)
        return Vec4Q(*(c * a for a in self))

    def dot(self, other) -> Fraction:
        return sum(a * b for a, b in zip(self, other))

    def norm2(self) -> Fraction:
        return self.dot(self)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def __eq__(self, other):
        return isinstance(other, Vec4Q) and self.coords() == other.coords()

    def __hash__(self):
        return hash(self.coords())

    def __repr__(self):
        return "Vec4Q(%s, %s, %s, %s)" % self.coords()

    def floats(self):
        return [float(a) for a in self]


ZERO = Vec4Q(0, 0, 0, 0)
E1 = Vec4Q(1, 0, 0, 0)
F1 = Vec4Q(0, 1, 0, 0)
E2 = Vec4Q(0, 0, 1, 0)
F2 = Vec4Q(0, 0, 0, 1)

# Standard ordered symplectic basis (e1, e2, f1, f2).
BASIS = {"e1": E1, "e2": E2, "f1": F1, "f2": F2}


def omega(u: Vec4Q, v: Vec4Q) -> Fraction:
    """The standard symplectic form, exact."""
    return u.x1 * v.y1 - u.y1 * v.x1 + u.x2 * v.y2 - u.y2 * v.x2


def liouville(p: Vec4Q, u: Vec4Q) -> Fraction:
    """The radial Liouville primitive lambda = 1/2 sum(x_i dy_i - y_i dx_i),
    evaluated at point p on vector u.  d(lambda) = omega."""
    return omega(p, u) / 2


def jmul(u: Vec4Q) -> Vec4Q:
    """The compatible complex structure J (multiplication by i per factor)."""
    return Vec4Q(-u.y1, u.x1, -u.y2, u.x2)


# ---------------------------------------------------------------------------
# rational matrix helpers (rows are lists of Fractions)


def rref(rows):
    """Reduced row echelon form.  Returns (reduced_rows, pivot_columns);
    zero rows are dropped."""
    mat = [[_q(x) for x in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows):
    """Basis of the right nullspace of the matrix, exact."""
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Q(0)] * ncols
        vec[fc] = Q(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -red[r][fc]
        basis.append(vec)
    return basis


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(a[i][k] * b[k][j] for k in range(m)) for j in range(p)]
            for i in range(n)]


def mat_vec(m, v: Vec4Q) -> Vec4Q:
    c = v.coords()
    return Vec4Q(*(sum(m[i][j] * c[j] for j in range(4)) for i in range(4)))


def mat_inv(m):
    n = len(m)
    aug = [[_q(x) for x in row] + [Q(1) if i == j else Q(0) for j in range(n)]
           for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise LagpolyError("SINGULAR_MATRIX", "matrix is not invertible")
    return [row[n:] for row in red]


def mat_transpose(m):
    return [list(col) for col in zip(*m)]


# Matrix of omega in coordinates (x1, y1, x2, y2).
OMEGA_MATRIX = [
    [Q(0), Q(1), Q(0), Q(0)],
    [Q(-1), Q(0), Q(0), Q(0)],
    [Q(0), Q(0), Q(0), Q(1)],
    [Q(0), Q(0), Q(-1), Q(0)],
]


def normalize_direction(v: Vec4Q) -> Vec4Q:
    """Scale so the first nonzero coordinate is 1.  Deterministic
    representative of the line span{v}."""
    for c in v:
        if c != 0:
            return v.scale(1 / c)
    raise LagpolyError("DEGENERATE_SPAN", "cannot normalize the zero vector")


def parallel(u: Vec4Q, v: Vec4Q) -> bool:
    for i in range(4):
        for j in range(i + 1, 4):
            if u.coords()[i] * v.coords()[j] != u.coords()[j] * v.coords()[i]:
                return False
    return True


# ---------------------------------------------------------------------------
# planes


class LagrangianPlane:
    """A 2-dimensional linear subspace of R^4 with certified omega-isotropy.

    The stored basis is the canonical RREF basis of the span, so two planes
    are equal iff their bases coincide."""

    __slots__ = ("b1", "b2")

    def __init__(self, b1: Vec4Q, b2: Vec4Q, require_lagrangian: bool = True):
        red, pivots = rref([list(b1), list(b2)])
        if len(pivots) < 2:
            raise LagpolyError("DEGENERATE_SPAN", "basis vectors are dependent")
        self.b1 = Vec4Q(*red[0])
        self.b2 = Vec4Q(*red[1])
        if require_lagrangian and omega(self.b1, self.b2) != 0:
            raise LagpolyError("NOT_LAGRANGIAN", "omega does not vanish on the span")

    def basis(self):
        return (self.b1, self.b2)

    def contains(self, v: Vec4Q) -> bool:
        _, pivots = rref([list(self.b1), list(self.b2), list(v)])
        return len(pivots) == 2

    def __eq__(self, other):
        return (isinstance(other, LagrangianPlane)
                and self.b1 == other.b1 and self.b2 == other.b2)

    def __hash__(self):
        return hash((self.b1, self.b2))

    def __repr__(self):
        return f"LagrangianPlane({self.b1!r}, {self.b2!r})"


def is_lagrangian(b1: Vec4Q, b2: Vec4Q) -> bool:
    _, pivots = rref([list(b1), list(b2)])
    if len(pivots) < 2:
        raise LagpolyError("DEGENERATE_SPAN", "vectors do not span a plane")
    return omega(b1, b2) == 0


def intersect_planes(p: LagrangianPlane, q: LagrangianPlane):
    """Exact intersection of two planes.  Returns a list of 0, 1 or 2
    basis vectors of P cap Q (canonical RREF representatives)."""
    # alpha*b1 + beta*b2 - gamma*c1 - delta*c2 = 0
    cols = [list(p.b1), list(p.b2), [-x for x in q.b1], [-x for x in q.b2]]
    rows = [[cols[j][i] for j in range(4)] for i in range(4)]
    vecs = []
    for sol in nullspace(rows):
        w = p.b1.scale(sol[0]) + p.b2.scale(sol[1])
        if not w.is_zero():
            vecs.append(list(w))
    if not vecs:
        return []
    red, _ = rref(vecs)
    return [Vec4Q(*row) for row in red]


# ---------------------------------------------------------------------------
# symplectomorphisms


class Symplectomorphism:
    """A linear symplectomorphism of R^4, stored as an exact 4x4 matrix
    in coordinates (x1, y1, x2, y2).  M^T Omega M = Omega is checked."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = [[_q(x) for x in row] for row in matrix]
        check = mat_mul(mat_transpose(m), mat_mul(OMEGA_MATRIX, m))
        if check != OMEGA_MATRIX:
            raise LagpolyError("NOT_SYMPLECTIC", "M^T Omega M != Omega")
        self.matrix = m

    def apply(self, v: Vec4Q) -> Vec4Q:
        return mat_vec(self.matrix, v)

    def apply_plane(self, p: LagrangianPlane) -> LagrangianPlane:
        return LagrangianPlane(self.apply(p.b1), self.apply(p.b2))

    def inverse(self) -> "Symplectomorphism":
        return Symplectomorphism(mat_inv(self.matrix))

    def compose(self, other: "Symplectomorphism") -> "Symplectomorphism":
        return Symplectomorphism(mat_mul(self.matrix, other.matrix))

    def is_identity(self) -> bool:
        return all(self.matrix[i][j] == (1 if i == j else 0)
                   for i in range(4) for j in range(4))

    def floats(self):
        return [[float(x) for x in row] for row in self.matrix]


IDENTITY = Symplectomorphism([[1 if i == j else 0 for j in range(4)] for i in range(4)])


# ---------------------------------------------------------------------------
# symplectic reduction


class ReductionFrame:
    """Deterministic symplectic frame of W = ell^omega / ell for an isotropic
    line ell.  The frame (w1, w2) consists of actual vectors in ell^omega with
    omega(w1, w2) = 1; classes in W are coordinatized as
    [v] = (omega(v, w2), omega(w1, v)).  The construction is a pure function
    of the canonical basis vector of ell."""

    __slots__ = ("a", "w1", "w2")

    def __init__(self, ell: Vec4Q):
        a = normalize_direction(ell)
        self.a = a
        # b with omega(a, b) = 1, first standard basis vector that works
        b = None
        for cand in (E1, F1, E2, F2):
            s = omega(a, cand)
            if s != 0:
                b = cand.scale(1 / s)
                break
        # project standard vectors into ell^omega, pick frame
        w1 = None
        for cand in (E1, F1, E2, F2):
            proj = cand - b.scale(omega(a, cand))
            if not proj.is_zero() and not parallel(proj, a):
                w1 = proj
                break
        w2 = None
        for cand in (E1, F1, E2, F2):
            proj = cand - b.scale(omega(a, cand))
            s = omega(w1, proj)
            if s != 0:
                w2 = proj.scale(1 / s)
                break
        self.w1 = w1
        self.w2 = w2

    def reduce(self, v: Vec4Q):
        """Coordinates of [v] in the frame.  Raises NOT_IN_COISOTROPIC if v
        is not omega-orthogonal to ell."""
        if omega(self.a, v) != 0:
            raise LagpolyError("NOT_IN_COISOTROPIC",
                               "vector is not in the omega-orthogonal of the line")
        return (omega(v, self.w2), omega(self.w1, v))


def symplectic_reduction(ell: Vec4Q, v: Vec4Q):
    """Class of v in W = ell^omega/ell, in the deterministic frame.
    Returns ((x, y), frame)."""
    frame = ReductionFrame(ell)
    return frame.reduce(v), frame


# ---------------------------------------------------------------------------
# hinge normal form


class HingeNormalForm:
    __slots__ = ("map", "s")

    def __init__(self, m: Symplectomorphism, s: Fraction):
        self.map = m
        self.s = s


def _complement_in_plane(plane: LagrangianPlane, line: Vec4Q) -> Vec4Q:
    """Deterministic basis vector of the plane independent of the line:
    RREF of [line; b1; b2], second pivot row."""
    red, pivots = rref([list(line), list(plane.b1), list(plane.b2)])
    if len(pivots) != 2:
        raise LagpolyError("DEGENERATE_SPAN", "line not contained in a plane")
    for row in reversed(red):
        cand = Vec4Q(*row)
        if not parallel(cand, line):
            return normalize_direction(cand)
    raise LagpolyError("DEGENERATE_SPAN", "no complement found")


def _solve_linear(rows, rhs):
    """Particular solution of rows * x = rhs with free variables set to 0."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        raise LagpolyError("INCONSISTENT_SYSTEM", "no solution")
    x = [Q(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def hinge_normal_form(p: LagrangianPlane, pprime: LagrangianPlane) -> HingeNormalForm:
    """Hinge normal form: a symplectomorphism M with
    M.P = span{e1, e2} and M.P' = span{e1, e2 + s f2}, s != 0.

    Deterministic choices: the intersection line representative has unit
    leading coefficient; the complements in P and P' are RREF rows."""
    inter = intersect_planes(p, pprime)
    if len(inter) != 1:
        raise LagpolyError("BAD_INTERSECTION",
                           f"planes intersect in dimension {len(inter)}, need 1")
    a = normalize_direction(inter[0])
    u = _complement_in_plane(p, a)       # E2 candidate
    vpr = _complement_in_plane(pprime, a)
    s = omega(u, vpr)
    if s == 0:
        raise LagpolyError("BAD_INTERSECTION", "P' is not transverse to P off the hinge line")
    e1v, e2v = a, u
    f2v = (vpr - u).scale(1 / s)
    # F1: omega(e1, F1) = 1, omega(e2, F1) = 0, omega(f2, F1) = 0
    rows = []
    rhs = [Q(1), Q(0), Q(0)]
    for w in (e1v, e2v, f2v):
        wc = w.coords()
        # omega(w, x) as linear functional in x
        rows.append([-wc[1], wc[0], -wc[3], wc[2]])
    f1v = Vec4Q(*_solve_linear(rows, rhs))
    # columns in coordinate order (x1, y1, x2, y2) <-> (e1, f1, e2, f2) slots
    b = [[e1v.coords()[i], f1v.coords()[i], e2v.coords()[i], f2v.coords()[i]]
         for i in range(4)]
    m = Symplectomorphism(mat_inv(b))
    return HingeNormalForm(m, s)


# ---------------------------------------------------------------------------
# random symplectomorphisms (test support)


def random_symplectomorphism(seed: int) -> Symplectomorphism:
    """Deterministic-in-seed exact symplectomorphism built from elementary
    symplectic factors; M^T Omega M = Omega is verified on construction."""
    rng = random.Random(seed)

    def rs():
        return Q(rng.randint(-3, 3), rng.randint(1, 3))

    # work in block coordinates (x1, x2, y1, y2), then permute back
    def blk_to_std(mb):
        perm = [0, 2, 1, 3]  # std index -> block index
        return [[mb[perm[i]][perm[j]] for j in range(4)] for i in range(4)]

    ident = [[Q(1) if i == j else Q(0) for j in range(4)] for i in range(4)]
    m = ident
    for _ in range(rng.randint(3, 6)):
        kind = rng.randrange(3)
        fac = [row[:] for row in ident]
        if kind == 0:
            # [[A, 0], [0, A^{-T}]] with unimodular-ish integer A
            a = [[Q(1), Q(rng.randint(-2, 2))], [Q(0), Q(1)]]
            if rng.random() < 0.5:
                a = [[Q(1), Q(0)], [Q(rng.randint(-2, 2)), Q(1)]]
            if rng.random() < 0.5:
                a = [[a[0][1], a[0][0]], [a[1][1], a[1][0]]]
                a = [[-a[0][0], -a[0][1]], a[1]]  # keep det = 1
            ainvt = mat_transpose(mat_inv(a))
            for i in range(2):
                for j in range(2):
                    fac[i][j] = a[i][j]
                    fac[2 + i][2 + j] = ainvt[i][j]
        elif kind == 1:
            # [[I, B], [0, I]], B symmetric
            b00, b11, b01 = rs(), rs(), rs()
            fac[0][2], fac[0][3] = b00, b01
            fac[1][2], fac[1][3] = b01, b11
        else:
            # [[I, 0], [C, I]], C symmetric
            c00, c11, c01 = rs(), rs(), rs()
            fac[2][0], fac[2][1] = c00, c01
            fac[3][0], fac[3][1] = c01, c11
        m = mat_mul(m, fac)
    return Symplectomorphism(blk_to_std(m))
