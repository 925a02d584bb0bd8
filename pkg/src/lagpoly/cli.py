"""Command-line interface: surface files, reports, and figures.

Subcommands: validate, generate, invariants, smooth-hinge, link, conjecture.
Surface files are JSON with exact rational coordinate strings ("p/q") and a
schema version tag.  All outputs are canonicalized and deterministic given
flags and LAGPOLY_SEED.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__
from .complexes import PolyhedralSurface, dual_complex, validate_surface, vertex_star
from .errors import LagpolyError
from .generators import (VertexModelSpec, local_vertex_model, product_surface,
                         regular_polygon)
from .linkknot import (PLLegendrianKnot, SampledKnot, conjecture_experiment,
                       sphere_link, unknot_by_stick_bound)
from .maslov import vertex_maslov
from .normalform import sign_parameters, vertex_normal_form
from .primitives import cocycle, solve_primitives, verify_cocycle
from .smoothing import HingeModel, sample_smoothed_hinge, verify_hinge_smoothing
from .symplin import Vec4Q

SCHEMA = "lagpoly-surface/1"


def _seed() -> int:
    return int(os.environ.get("LAGPOLY_SEED", "0"))


# ---------------------------------------------------------------------------
# surface files


def _parse_rational(s) -> Fraction:
    if not isinstance(s, str):
        raise LagpolyError("PARSE_ERROR", f"coordinate {s!r} is not a string")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise LagpolyError("PARSE_ERROR", f"bad rational {s!r}: {exc}")


def save_surface(k: PolyhedralSurface, path, metadata=None) -> None:
    doc = {
        "schema": SCHEMA,
        "vertices": [[str(c) for c in v] for v in k.vertices],
        "faces": [list(f) for f in k.faces],
        "metadata": metadata or {},
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n",
                          encoding="utf-8")


def load_surface(path, allow_invalid: bool = False) -> PolyhedralSurface:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise LagpolyError("PARSE_ERROR", f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise LagpolyError("PARSE_ERROR", f"{path}: {exc}")
    if not isinstance(doc, dict) or "schema" not in doc:
        raise LagpolyError("SCHEMA_ERROR", "missing schema tag")
    major = str(doc["schema"]).rsplit("/", 1)[0]
    if major != SCHEMA.rsplit("/", 1)[0]:
        raise LagpolyError("SCHEMA_ERROR", f"unknown schema {doc['schema']!r}")
    if "vertices" not in doc or "faces" not in doc:
        raise LagpolyError("SCHEMA_ERROR", "missing vertices or faces")
    verts = []
    for row in doc["vertices"]:
        if len(row) != 4:
            raise LagpolyError("SCHEMA_ERROR", "vertices must have 4 coordinates")
        verts.append(Vec4Q(*[_parse_rational(c) for c in row]))
    faces = []
    for f in doc["faces"]:
        if any(not isinstance(i, int) or i < 0 or i >= len(verts) for i in f):
            raise LagpolyError("SCHEMA_ERROR", f"face index out of range: {f}")
        faces.append(tuple(f))
    k = PolyhedralSurface(verts, faces)
    if not allow_invalid:
        report = validate_surface(k)
        if not report.passed:
            raise LagpolyError("VALIDATION_ERROR", report.summary())
    return k


# ---------------------------------------------------------------------------
# figures


def front_points(knot) -> np.ndarray:
    """Front-projection coordinates: (x, z) of the stereographic image of
    the knot from a deterministic far pole."""
    from .linkknot import _choose_pole, _stereographic
    if isinstance(knot, SampledKnot) and len(knot.points):
        rel = (knot.points - knot.center) / knot.delta
        pole = _choose_pole(rel, rel, seed=_seed())
        p3 = _stereographic(rel, pole)
        return np.stack([p3[:, 0], p3[:, 2]], axis=1)
    return np.zeros((0, 2))


def front_cusps(fr: np.ndarray) -> list:
    """Indices where dx/ds changes sign along the closed front (cusps of a
    generic Legendrian front are the x-turning points)."""
    if len(fr) < 3:
        return []
    dx = np.roll(fr[:, 0], -1) - fr[:, 0]
    sign = np.sign(dx)
    sign[sign == 0] = 1
    return [i for i in range(len(fr)) if sign[i - 1] != sign[i]]


def emit_front_svg(knot, path) -> None:
    fr = front_points(knot) if not isinstance(knot, np.ndarray) else knot
    w, h = 480, 480
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
             f'width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
             f'<rect width="{w}" height="{h}" fill="white"/>']
    if len(fr):
        lo = fr.min(axis=0)
        hi = fr.max(axis=0)
        span = max(float((hi - lo).max()), 1e-9)
        pad = 30.0
        scale = (w - 2 * pad) / span

        def xy(p):
            q = (p - lo) * scale + pad
            return f"{q[0]:.2f},{h - q[1]:.2f}"

        pts = " ".join(xy(p) for p in fr)
        parts.append(f'<polyline points="{pts} {xy(fr[0])}" fill="none" '
                     f'stroke="black" stroke-width="1.2"/>')
        for i in front_cusps(fr):
            q = (fr[i] - lo) * scale + pad
            parts.append(f'<circle cx="{q[0]:.2f}" cy="{h - q[1]:.2f}" '
                         f'r="4" fill="none" stroke="red" stroke-width="1.5"/>')
    else:
        parts.append(f'<text x="{w//2}" y="{h//2}" text-anchor="middle" '
                     f'fill="gray">empty</text>')
    parts.append("</svg>")
    try:
        Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
    except OSError as exc:
        raise LagpolyError("IO_ERROR", f"cannot write {path}: {exc}")


# ---------------------------------------------------------------------------
# reports


def _json_default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    raise TypeError(f"not serializable: {x!r}")


def _write_json(doc, path=None) -> None:
    text = json.dumps(doc, sort_keys=True, indent=2, default=_json_default) + "\n"
    if path:
        Path(path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _auto_delta(k: PolyhedralSurface, v: int) -> Fraction:
    """A rational radius exactly below the vertex/face clearance of v."""
    from .linkknot import _dist2_point_face
    vv = k.vertices[v]
    d2 = None
    for w, p in enumerate(k.vertices):
        if w != v:
            q = (p - vv).dot(p - vv)
            d2 = q if d2 is None else min(d2, q)
    incident = set(k.faces_at_vertex(v))
    for fi in range(len(k.faces)):
        if fi not in incident:
            q = _dist2_point_face(k, fi, vv)
            d2 = q if d2 is None else min(d2, q)
    if d2 is None or d2 == 0:
        raise LagpolyError("DELTA_TOO_LARGE", "no clearance around the vertex")
    delta = Fraction(math.sqrt(float(d2)) / 2).limit_denominator(10 ** 6)
    while delta * delta * 4 > d2:
        delta *= Fraction(9, 10)
    return delta


def invariant_report(k: PolyhedralSurface) -> dict:
    prim = solve_primitives(k)
    coc = cocycle(k, prim)
    cocycle_ok, _ = verify_cocycle(k, coc)
    dual = dual_complex(k)
    vertices = []
    for v in range(len(k.vertices)):
        rec = {"vertex": v}
        try:
            star = vertex_star(k, v)
            rec["valency"] = star.valency
            rec["mu"] = vertex_maslov(star).index
            rec["unknot_certified"] = star.valency <= 5
            if star.valency == 4:
                nf = vertex_normal_form(star)
                e12, e23, e34, e41, sigma = sign_parameters(star, nf)
                rec["sign_tau"] = (0 if nf.tau == 0
                                   else (1 if nf.tau > 0 else -1))
                rec["epsilons"] = [e12, e23, e34, e41]
                rec["sigma"] = sigma
        except LagpolyError as exc:
            rec["error"] = f"{exc.code}: {exc}"
        vertices.append(rec)
    return {
        "schema": "lagpoly-invariants/1",
        "tolerances": {"maslov_integrality": 1e-6, "gram_defect": 1e-9,
                       "cocycle": "exact rational"},
        "vertices": vertices,
        "global": {
            "cocycle_ok": cocycle_ok,
            "class_rank_info": {
                "dual_vertices": len(dual.dual_vertices),
                "dual_edges": len(dual.dual_edges),
                "dual_cells": len(dual.dual_cells),
                "interior_vertex_residuals_zero": cocycle_ok,
            },
        },
    }


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> int:
    if args.kind == "product":
        p = regular_polygon(args.n, scale=Fraction(args.scale))
        q = regular_polygon(args.m or args.n, scale=Fraction(args.scale))
        k = product_surface(p, q)
        meta = {"generator": "product", "n": args.n, "m": args.m or args.n}
    else:
        eps = [1 if c == "+" else -1 for c in args.eps]
        spec = VertexModelSpec(tau=Fraction(args.tau), eps12=eps[0],
                               eps23=eps[1], eps34=eps[2], eps41=eps[3])
        k = local_vertex_model(spec)
        meta = {"generator": "vertex-model", "tau": str(spec.tau),
                "eps": args.eps}
    save_surface(k, args.out, metadata=meta)
    print(f"wrote {args.out}: {len(k.vertices)} vertices, {len(k.faces)} faces")
    return 0


def _cmd_validate(args) -> int:
    k = load_surface(args.surface, allow_invalid=True)
    report = validate_surface(k)
    print(report.summary())
    return 0 if report.passed else 1


def _cmd_invariants(args) -> int:
    k = load_surface(args.surface)
    rep = invariant_report(k)
    _write_json(rep, args.out)
    ok = rep["global"]["cocycle_ok"] and not any(
        "error" in r for r in rep["vertices"])
    if args.out:
        print(f"wrote {args.out}: {len(rep['vertices'])} vertex records, "
              f"cocycle_ok={rep['global']['cocycle_ok']}")
    return 0 if ok else 1


def _cmd_smooth_hinge(args) -> int:
    model = HingeModel(s=Fraction(args.s), eps=args.eps, t=args.t)
    samples = sample_smoothed_hinge(model, args.n)
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        wr = csv.writer(fh)
        wr.writerow(["x1", "y1", "x2", "y2", "region", "branch", "residual"])
        for p, r, b, res in zip(samples.points, samples.regions,
                                samples.branches, samples.residuals):
            wr.writerow([f"{p[0]:.17g}", f"{p[1]:.17g}", f"{p[2]:.17g}",
                         f"{p[3]:.17g}", r, int(b), f"{res:.3e}"])
    report = verify_hinge_smoothing(samples)
    doc = {
        "s": str(model.s), "eps": model.eps, "t": model.t,
        "samples": len(samples.points),
        "max_lagrangian_defect": report.max_lagrangian_defect,
        "min_grad_norm": report.min_grad_norm,
        "max_residual": report.max_residual,
        "region_counts": report.region_counts,
        "failures": report.failures,
    }
    _write_json(doc, args.report)
    print(f"wrote {args.out}: {len(samples.points)} samples, "
          f"ok={report.ok}")
    return 0 if report.ok else 1


def _link_doc(pl: PLLegendrianKnot) -> dict:
    return {
        "schema": "lagpoly-link/1",
        "center": [str(c) for c in pl.center],
        "delta": str(pl.delta),
        "corner_count": pl.k,
        "unknot_certified": unknot_by_stick_bound(pl),
        "arcs": [{
            "face": a.face,
            "corner_from": [str(c) for c in a.d1],
            "corner_to": [str(c) for c in a.d2],
            "angle": a.angle,
        } for a in pl.arcs],
    }


def _sample_pl(pl: PLLegendrianKnot, per_arc: int = 200) -> SampledKnot:
    center = np.array(pl.center.floats())
    d = float(pl.delta)
    pts, tans = [], []
    for arc in pl.arcs:
        for theta in np.linspace(0.0, arc.angle, per_arc, endpoint=False):
            pts.append(arc.point(theta, center, d))
            tans.append(arc.tangent(theta))
    pts = np.array(pts)
    tans = np.array(tans)
    from .linkknot import _contact_defect
    return SampledKnot(pts, tans, center, d, closure_defect=0.0,
                       contact_defect=_contact_defect(pts, tans, center, d),
                       max_spacing=float(np.max(np.linalg.norm(
                           np.roll(pts, -1, 0) - pts, axis=1))))


def _cmd_link(args) -> int:
    k = load_surface(args.surface)
    delta = Fraction(args.delta) if args.delta else _auto_delta(k, args.vertex)
    pl = sphere_link(k, args.vertex, delta)
    doc = _link_doc(pl)
    _write_json(doc, args.out)
    sampled = _sample_pl(pl)
    if args.svg:
        emit_front_svg(sampled, args.svg)
    print(f"vertex {args.vertex}: {pl.k} arcs at delta={delta}, "
          f"unknot_certified={doc['unknot_certified']}")
    return 0


def _cmd_conjecture(args) -> int:
    taus = [Fraction(t) for t in args.tau.split(",")]
    if args.eps_patterns == "all":
        pats = [tuple(1 if (i >> b) & 1 == 0 else -1 for b in range(4))
                for i in range(16)]
    else:
        pats = [tuple(1 if c == "+" else -1 for c in pat)
                for pat in args.eps_patterns.split(",")]
    rows = conjecture_experiment(taus, pats, Fraction(args.delta),
                                 hinge_t=args.t, seed=_seed())
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = []
    for i, r in enumerate(rows):
        table.append({
            "tau": str(r.tau),
            "eps": "".join("+" if e > 0 else "-" for e in r.epsilons),
            "sigma": r.sigma, "mu": r.mu, "mu_smooth": r.mu_smooth,
            "rot": r.rot, "tb": r.tb,
            "contact_defect": r.contact_defect,
            "rot_equals_half_mu": r.rot_equals_half_mu,
            "rot_equals_half_mu_smooth": r.rot_equals_half_mu_smooth,
            "error": r.error,
        })
        if not r.error and args.svg:
            from .linkknot import smoothed_sphere_link
            spec = VertexModelSpec(tau=r.tau, eps12=r.epsilons[0],
                                   eps23=r.epsilons[1], eps34=r.epsilons[2],
                                   eps41=r.epsilons[3])
            knot = smoothed_sphere_link(
                spec, (float(Fraction(args.delta)) / 4.0, args.t),
                Fraction(args.delta))
            emit_front_svg(knot, out_dir / f"row_{i:02d}.svg")
    _write_json({"schema": "lagpoly-conjecture/1", "rows": table},
                out_dir / "table.json")
    with open(out_dir / "table.csv", "w", newline="", encoding="utf-8") as fh:
        wr = csv.writer(fh)
        cols = list(table[0].keys()) if table else []
        wr.writerow(cols)
        for row in table:
            wr.writerow([row[c] for c in cols])
    n_err = sum(1 for r in rows if r.error)
    n_ok = sum(1 for r in rows
               if not r.error and r.rot_equals_half_mu_smooth)
    print(f"{len(rows)} rows ({n_err} errors); "
          f"rot = mu_smooth/2 on {n_ok} rows; table in {out_dir}")
    return 0 if n_err == 0 else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="lagpoly",
        description="Polyhedral Lagrangian surfaces in R^4: validation, "
                    "Maslov indices, hinge smoothing, Legendrian links.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("generate", help="write a surface file")
    g.add_argument("kind", choices=["product", "vertex-model"])
    g.add_argument("--n", type=int, default=4)
    g.add_argument("--m", type=int, default=None)
    g.add_argument("--scale", default="1")
    g.add_argument("--tau", default="1")
    g.add_argument("--eps", default="++++")
    g.add_argument("--out", required=True)
    g.set_defaults(fn=_cmd_generate)

    v = sub.add_parser("validate", help="validate a surface file")
    v.add_argument("surface")
    v.set_defaults(fn=_cmd_validate)

    i = sub.add_parser("invariants", help="per-vertex invariant report")
    i.add_argument("surface")
    i.add_argument("--out", default=None)
    i.set_defaults(fn=_cmd_invariants)

    s = sub.add_parser("smooth-hinge", help="sample a hinge smoothing")
    s.add_argument("--s", default="1")
    s.add_argument("--eps", type=float, default=1.0)
    s.add_argument("--t", type=float, default=0.01)
    s.add_argument("--n", type=int, default=400)
    s.add_argument("--out", required=True)
    s.add_argument("--report", default=None)
    s.set_defaults(fn=_cmd_smooth_hinge)

    l = sub.add_parser("link", help="PL sphere link at a vertex")
    l.add_argument("surface")
    l.add_argument("--vertex", type=int, default=0)
    l.add_argument("--delta", default=None)
    l.add_argument("--out", default=None)
    l.add_argument("--svg", default=None)
    l.set_defaults(fn=_cmd_link)

    c = sub.add_parser("conjecture", help="rot/tb experiment table")
    c.add_argument("--tau", default="1,-1,2,-2")
    c.add_argument("--eps-patterns", default="all")
    c.add_argument("--delta", default="1/2")
    c.add_argument("--t", type=float, default=1e-8)
    c.add_argument("--out-dir", default="conjecture_out")
    c.add_argument("--svg", action="store_true", default=True)
    c.add_argument("--no-svg", dest="svg", action="store_false")
    c.set_defaults(fn=_cmd_conjecture)

    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except LagpolyError as exc:
        json.dump({"error": exc.code, "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
