"""Numeric hot kernels: signed crossing counting for linking numbers and the
Gauss linking integral.

Both have a pure-numpy implementation; if numba is installed and the
environment variable LAGPOLY_NO_NUMBA is unset, the crossing kernel is
compiled with @njit.  `KERNEL_BACKEND` reports which path is active.
"""

from __future__ import annotations

import os

import numpy as np


def _crossings_py(ax, ay, az, bx, by, bz, tol):
    """Signed sum of crossings of closed polyline A over closed polyline B in
    the (x, y) projection, plus the smallest genericity margin encountered.

    A crossing contributes sign(cross of directions) when A passes over B
    (larger z).  The margin is the smallest of: |direction cross| at any
    near-intersection, distance of intersection parameters from {0, 1}, and
    the depth gap; retry with a new projection if it is below tolerance.
    """
    n = ax.shape[0]
    m = bx.shape[0]
    total = 0.0
    margin = 1e300
    for i in range(n):
        i2 = (i + 1) % n
        p0x, p0y = ax[i], ay[i]
        dx1 = ax[i2] - p0x
        dy1 = ay[i2] - p0y
        for j in range(m):
            j2 = (j + 1) % m
            q0x, q0y = bx[j], by[j]
            dx2 = bx[j2] - q0x
            dy2 = by[j2] - q0y
            den = dx1 * dy2 - dy1 * dx2
            rx = q0x - p0x
            ry = q0y - p0y
            if den == 0.0:
                continue
            t = (rx * dy2 - ry * dx2) / den
            u = (rx * dy1 - ry * dx1) / den
            if t < -tol or t > 1.0 + tol or u < -tol or u > 1.0 + tol:
                continue
            edge = min(min(abs(t), abs(1.0 - t)), min(abs(u), abs(1.0 - u)))
            if edge < margin:
                margin = edge
            if t <= 0.0 or t >= 1.0 or u <= 0.0 or u >= 1.0:
                continue
            za = az[i] + t * (az[i2] - az[i])
            zb = bz[j] + u * (bz[j2] - bz[j])
            gap = abs(za - zb)
            if gap < margin:
                margin = gap
            seg_cross = abs(den) / max(
                1e-300,
                np.sqrt((dx1 * dx1 + dy1 * dy1) * (dx2 * dx2 + dy2 * dy2)))
            if seg_cross < margin:
                margin = seg_cross
            if za > zb:
                # right-hand convention: +1 when (over, under) directions
                # form a positive frame in the viewing plane
                total += 1.0 if den > 0.0 else -1.0
    return total, margin


def _gauss_py(pa, da, pb, db):
    """Discrete Gauss linking integral over segment midpoints and steps."""
    total = 0.0
    n = pa.shape[0]
    m = pb.shape[0]
    for i in range(n):
        for j in range(m):
            # standard integrand (r_A - r_B) . (dr_A x dr_B) / |r|^3
            rx = pa[i, 0] - pb[j, 0]
            ry = pa[i, 1] - pb[j, 1]
            rz = pa[i, 2] - pb[j, 2]
            r3 = (rx * rx + ry * ry + rz * rz) ** 1.5
            cx = da[i, 1] * db[j, 2] - da[i, 2] * db[j, 1]
            cy = da[i, 2] * db[j, 0] - da[i, 0] * db[j, 2]
            cz = da[i, 0] * db[j, 1] - da[i, 1] * db[j, 0]
            total += (rx * cx + ry * cy + rz * cz) / r3
    return total / (4.0 * np.pi)


KERNEL_BACKEND = "numpy"
_crossings_impl = _crossings_py
_gauss_impl = _gauss_py

if not os.environ.get("LAGPOLY_NO_NUMBA"):
    try:
        from numba import njit

        _crossings_impl = njit(cache=True)(_crossings_py)
        _gauss_impl = njit(cache=True)(_gauss_py)
        KERNEL_BACKEND = "numba"
    except ImportError:  # pragma: no cover - depends on environment
        pass


def signed_crossing_sum(a2, za, b2, zb, tol=1e-6):
    """Signed over-crossing sum of closed polyline A over B under the
    standard (x, y) projection; z arrays are the projection depths.
    Returns (signed_sum, genericity_margin)."""
    total, margin = _crossings_impl(
        np.ascontiguousarray(a2[:, 0], dtype=np.float64),
        np.ascontiguousarray(a2[:, 1], dtype=np.float64),
        np.ascontiguousarray(za, dtype=np.float64),
        np.ascontiguousarray(b2[:, 0], dtype=np.float64),
        np.ascontiguousarray(b2[:, 1], dtype=np.float64),
        np.ascontiguousarray(zb, dtype=np.float64),
        float(tol),
    )
    return total, margin


def gauss_linking(pa, pb):
    """Approximate linking number of two closed 3-space polylines via the
    Gauss integral over segment midpoints."""
    pa = np.asarray(pa, dtype=np.float64)
    pb = np.asarray(pb, dtype=np.float64)
    da = np.roll(pa, -1, axis=0) - pa
    db = np.roll(pb, -1, axis=0) - pb
    ma = pa + 0.5 * da
    mb = pb + 0.5 * db
    return float(_gauss_impl(np.ascontiguousarray(ma), np.ascontiguousarray(da),
                             np.ascontiguousarray(mb), np.ascontiguousarray(db)))
