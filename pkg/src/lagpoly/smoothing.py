"""Local smoothing of a hinge in normal form.

The hinge in normal form is the union of the Lagrangian planes
P = {y1 = y2 = 0} and P' = {y1 = 0, y2 = s*x2}.  For 0 < t <= 1 the family

    g_t(x2, y2) = y2*(y2 - s*x2) - t*bump(eps, (x2, y2))

has zero set a pair of smooth curves that coincide with P union P' outside
the ball of radius eps and with the exact hyperbola branch
x2 = (1/s)*(y2 - t/y2) inside the ball of radius eps/2.  The smoothed
surface S_t is (zero curve) x (x1-axis), a Lagrangian product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from .errors import LagpolyError

RESIDUAL_TOL = 1e-12
GRAD_TOL = 1e-8
INNER_TOL = 1e-10
LAGRANGIAN_TOL = 1e-9
TRACE_STEP_DIV = 200  # arc-length step = eps / TRACE_STEP_DIV


def _q(u: float) -> float:
    if u <= 0.0:
        return 0.0
    return math.exp(-1.0 / u)


def _h(u: float) -> float:
    if u <= 0.0:
        return 1.0
    if u >= 1.0:
        return 0.0
    a = _q(1.0 - u)
    b = _q(u)
    return a / (a + b)


def _h_prime(u: float) -> float:
    if u <= 0.0 or u >= 1.0:
        return 0.0
    a = _q(1.0 - u)
    b = _q(u)
    # q'(u) = q(u)/u^2 for u > 0
    ap = -a / (1.0 - u) ** 2
    bp = b / u ** 2
    return (ap * b - a * bp) / (a + b) ** 2


def bump(eps: float, z) -> float:
    """Smooth radial cutoff: 1 on |z| <= eps/2, 0 on |z| >= eps."""
    if eps <= 0:
        raise LagpolyError("BAD_PARAMETERS", "eps must be positive")
    r = math.hypot(float(z[0]), float(z[1]))
    return _h(2.0 * r / eps - 1.0)


def _bump_and_grad(eps: float, x: float, y: float):
    r = math.hypot(x, y)
    u = 2.0 * r / eps - 1.0
    b = _h(u)
    if r == 0.0 or u <= 0.0 or u >= 1.0:
        return b, 0.0, 0.0
    dp = _h_prime(u) * (2.0 / eps)
    return b, dp * x / r, dp * y / r


@dataclass(frozen=True)
class HingeModel:
    """Parameters of one hinge smoothing: hinge slope s, cutoff radius eps,
    family parameter t."""
    s: Fraction
    eps: float = 1.0
    t: float = 0.01

    def __post_init__(self):
        if self.s == 0:
            raise LagpolyError("BAD_PARAMETERS", "hinge parameter s must be nonzero")
        if not self.eps > 0:
            raise LagpolyError("BAD_PARAMETERS", "eps must be positive")
        if not (0.0 < self.t <= 1.0):
            raise LagpolyError("BAD_PARAMETERS", "t must lie in (0, 1]")


def g_eval(model: HingeModel, x2: float, y2: float) -> float:
    s = float(model.s)
    return y2 * (y2 - s * x2) - model.t * bump(model.eps, (x2, y2))


def g_grad(model: HingeModel, x2: float, y2: float):
    s = float(model.s)
    _, bx, by = _bump_and_grad(model.eps, x2, y2)
    return (-s * y2 - model.t * bx, 2.0 * y2 - s * x2 - model.t * by)


def _polish(model: HingeModel, x: float, y: float):
    """Newton steps along the gradient to machine-level |g|; the inner
    hyperbola check divides the residual by s*y2, so a loose polish would
    leak there at small t."""
    for _ in range(60):
        g = g_eval(model, x, y)
        if abs(g) <= 1e-16 * max(1.0, abs(y)):
            break
        gx, gy = g_grad(model, x, y)
        n2 = gx * gx + gy * gy
        if n2 < GRAD_TOL ** 2:
            raise LagpolyError("SINGULAR_SAMPLE",
                               f"|grad g| < {GRAD_TOL} near ({x}, {y})")
        x -= g * gx / n2
        y -= g * gy / n2
    return x, y


def _region(eps: float, x: float, y: float) -> str:
    r = math.hypot(x, y)
    if r <= eps / 2.0:
        return "inner"
    if r >= eps:
        return "outer"
    return "transition"


@dataclass
class SmoothedHingeSamples:
    """Samples of the smoothed hinge surface S_t in normal coordinates."""
    model: HingeModel
    points: np.ndarray           # (n, 4) floats, (x1, y1, x2, y2), x1 = y1 = 0
    tangents: np.ndarray         # (n, 2, 4) tangent frames of S_t
    regions: List[str]
    branches: np.ndarray         # (n,) int branch id, 0 or 1
    residuals: np.ndarray        # (n,) |g_t| after polishing
    grad_norms: np.ndarray       # (n,) |grad g_t|


def _trace_branch(model: HingeModel, x0: float, y0: float, inward):
    """Trace one zero-curve branch from (x0, y0) until it leaves the disc of
    radius r_stop on the far side.  Returns the polished point list."""
    eps = model.eps
    step = eps / TRACE_STEP_DIV
    r_stop = math.hypot(x0, y0)
    x, y = _polish(model, x0, y0)
    gx, gy = g_grad(model, x, y)
    tx, ty = -gy, gx
    n = math.hypot(tx, ty)
    tx, ty = tx / n, ty / n
    if tx * inward[0] + ty * inward[1] < 0:
        tx, ty = -tx, -ty
    pts = [(x, y)]
    left_start = False
    for _ in range(200 * TRACE_STEP_DIV):
        x, y = _polish(model, x + step * tx, y + step * ty)
        gx, gy = g_grad(model, x, y)
        ntx, nty = -gy, gx
        n = math.hypot(ntx, nty)
        ntx, nty = ntx / n, nty / n
        if ntx * tx + nty * ty < 0:
            ntx, nty = -ntx, -nty
        tx, ty = ntx, nty
        pts.append((x, y))
        r = math.hypot(x, y)
        if r < 0.9 * r_stop:
            left_start = True
        if left_start and r >= r_stop:
            break
    else:
        raise LagpolyError("BAD_PARAMETERS", "zero-curve trace did not close out")
    return pts


def sample_smoothed_hinge(model: HingeModel, n: int) -> SmoothedHingeSamples:
    """Trace both zero-curve branches of g_t and return n samples with
    tangent frames of S_t = (zero curve) x (x1-axis)."""
    if n < 8:
        raise LagpolyError("BAD_PARAMETERS", "need at least 8 samples")
    eps = model.eps
    s = float(model.s)
    r0 = 1.5 * eps
    # branch starting on P (y2 = 0, x2 < 0) and branch starting on P (x2 > 0)
    raw = [
        _trace_branch(model, -r0, 0.0, (1.0, 0.0)),
        _trace_branch(model, r0, 0.0, (-1.0, 0.0)),
    ]
    # each branch must terminate on P' = {y2 = s*x2} exactly (outside support)
    for pts in raw:
        xe, ye = pts[-1]
        if abs(ye - s * xe) > 1e-9 and abs(ye) > 1e-9:
            raise LagpolyError(
                "BAD_PARAMETERS",
                "branch endpoint off the hinge planes; t too aggressive for eps")

    per = max(4, n // 2)
    points, tangents, regions, branches = [], [], [], []
    residuals, grads = [], []
    for bid, pts in enumerate(raw):
        idx = np.linspace(0, len(pts) - 1, per).round().astype(int)
        for i in np.unique(idx):
            x, y = _polish(model, *pts[i])
            gx, gy = g_grad(model, x, y)
            gn = math.hypot(gx, gy)
            if gn < GRAD_TOL:
                raise LagpolyError("SINGULAR_SAMPLE",
                                   f"|grad g| < {GRAD_TOL} at ({x}, {y})")
            tn = math.hypot(-gy, gx)
            frame = np.array([
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, -gy / tn, gx / tn],
            ])
            points.append([0.0, 0.0, x, y])
            tangents.append(frame)
            regions.append(_region(eps, x, y))
            branches.append(bid)
            residuals.append(abs(g_eval(model, x, y)))
            grads.append(gn)
    samples = SmoothedHingeSamples(
        model=model,
        points=np.array(points),
        tangents=np.array(tangents),
        regions=regions,
        branches=np.array(branches),
        residuals=np.array(residuals),
        grad_norms=np.array(grads),
    )
    _check_regions(samples)
    return samples


def _check_regions(samples: SmoothedHingeSamples) -> None:
    m = samples.model
    s = float(m.s)
    for p, region in zip(samples.points, samples.regions):
        x, y = p[2], p[3]
        if region == "outer":
            d = min(abs(y), abs(y - s * x) / math.hypot(s, 1.0))
            if d > RESIDUAL_TOL:
                raise LagpolyError("BAD_PARAMETERS",
                                   f"outer sample off the hinge planes: d = {d}")
        elif region == "inner":
            if abs(y) < 1e-15:
                raise LagpolyError("SINGULAR_SAMPLE", "inner sample with y2 = 0")
            d = abs(x - (y - m.t / y) / s)
            if d > INNER_TOL:
                raise LagpolyError(
                    "BAD_PARAMETERS",
                    f"inner sample off the exact hyperbola: d = {d}")


@dataclass
class SmoothingReport:
    max_lagrangian_defect: float
    min_grad_norm: float
    max_residual: float
    region_counts: dict
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_hinge_smoothing(samples: SmoothedHingeSamples) -> SmoothingReport:
    """Check the Lagrangian condition on every tangent frame, gradient
    margins, and an embeddedness heuristic.  Reports failures, never raises."""
    from .symplin import OMEGA_MATRIX

    omega = np.array([[float(x) for x in row] for row in OMEGA_MATRIX])
    failures: List[str] = []
    max_defect = 0.0
    for i, frame in enumerate(samples.tangents):
        defect = abs(frame[0] @ omega @ frame[1])
        max_defect = max(max_defect, defect)
        if defect > LAGRANGIAN_TOL:
            failures.append(f"sample {i}: Lagrangian defect {defect:.3e}")
    min_grad = float(samples.grad_norms.min())
    if min_grad < GRAD_TOL:
        failures.append(f"gradient margin {min_grad:.3e} below {GRAD_TOL}")
    max_res = float(samples.residuals.max())
    if max_res > RESIDUAL_TOL:
        failures.append(f"residual {max_res:.3e} above {RESIDUAL_TOL}")
    # embeddedness heuristic: no near-coincident samples with transversal tangents
    pts = samples.points[:, 2:]
    for i in range(len(pts)):
        d = np.linalg.norm(pts[i + 1:] - pts[i], axis=1)
        for j in np.nonzero(d < 1e-6)[0]:
            k = i + 1 + j
            cross = abs(samples.tangents[i][1] @ omega @ samples.tangents[k][1])
            ti = samples.tangents[i][1][2:]
            tk = samples.tangents[k][1][2:]
            if abs(ti @ tk) < 1.0 - 1e-9:
                failures.append(
                    f"samples {i}, {k} nearly coincide with transversal tangents")
            del cross
    counts = {}
    for r in samples.regions:
        counts[r] = counts.get(r, 0) + 1
    return SmoothingReport(
        max_lagrangian_defect=max_defect,
        min_grad_norm=min_grad,
        max_residual=max_res,
        region_counts=counts,
        failures=failures,
    )
