import json
import subprocess
import sys

import numpy as np
import pytest

from lagpoly.cli import (emit_front_svg, front_cusps, front_points,
                         load_surface, main, save_surface)
from lagpoly.errors import LagpolyError
from lagpoly.linkknot import standard_legendrian_unknot


def _run(args, cwd):
    return subprocess.run([sys.executable, "-m", "lagpoly.cli"] + args,
                          cwd=cwd, capture_output=True, text=True)


def test_generate_validate_invariants_pipeline(tmp_path):
    r = _run(["generate", "product", "--n", "4", "--out", "k.json"], tmp_path)
    assert r.returncode == 0, r.stderr
    r = _run(["validate", "k.json"], tmp_path)
    assert r.returncode == 0 and "pass: True" in r.stdout
    r = _run(["invariants", "k.json", "--out", "inv.json"], tmp_path)
    assert r.returncode == 0
    rep = json.loads((tmp_path / "inv.json").read_text())
    assert rep["global"]["cocycle_ok"] is True
    assert all(v["mu"] == 2 for v in rep["vertices"])
    assert all(v["unknot_certified"] for v in rep["vertices"])


def test_invariants_byte_stable(tmp_path):
    _run(["generate", "product", "--n", "4", "--out", "k.json"], tmp_path)
    _run(["invariants", "k.json", "--out", "a.json"], tmp_path)
    _run(["invariants", "k.json", "--out", "b.json"], tmp_path)
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_surface_roundtrip_byte_identical(tmp_path):
    _run(["generate", "vertex-model", "--tau", "2", "--eps", "+-+-",
          "--out", "m.json"], tmp_path)
    k = load_surface(tmp_path / "m.json", allow_invalid=True)
    meta = json.loads((tmp_path / "m.json").read_text())["metadata"]
    save_surface(k, tmp_path / "m2.json", metadata=meta)
    assert (tmp_path / "m.json").read_bytes() == (tmp_path / "m2.json").read_bytes()


def test_error_json_on_stderr(tmp_path):
    r = _run(["validate", "nope.json"], tmp_path)
    assert r.returncode != 0
    err = json.loads(r.stderr)
    assert err["error"] == "PARSE_ERROR"


def test_schema_major_refused(tmp_path):
    _run(["generate", "product", "--n", "4", "--out", "k.json"], tmp_path)
    doc = json.loads((tmp_path / "k.json").read_text())
    doc["schema"] = "other-format/3"
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    r = _run(["validate", "bad.json"], tmp_path)
    assert r.returncode != 0
    assert json.loads(r.stderr)["error"] == "SCHEMA_ERROR"


def test_bad_rational_refused(tmp_path):
    _run(["generate", "product", "--n", "4", "--out", "k.json"], tmp_path)
    doc = json.loads((tmp_path / "k.json").read_text())
    doc["vertices"][0][0] = "1/0"
    (tmp_path / "bad.json").write_text(json.dumps(doc))
    r = _run(["invariants", "bad.json"], tmp_path)
    assert r.returncode != 0
    assert json.loads(r.stderr)["error"] == "PARSE_ERROR"


def test_invalid_surface_refused_without_flag(tmp_path):
    doc = {"schema": "lagpoly-surface/1",
           "vertices": [["0", "0", "0", "0"], ["1", "0", "0", "0"],
                        ["1", "1", "0", "0"], ["0", "1", "0", "0"]],
           "faces": [[0, 1, 2, 3]], "metadata": {}}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(LagpolyError) as err:
        load_surface(p)
    assert err.value.code == "VALIDATION_ERROR"
    load_surface(p, allow_invalid=True)    # no raise


def test_smooth_hinge_csv(tmp_path):
    r = _run(["smooth-hinge", "--s", "1", "--t", "0.001", "--n", "100",
              "--out", "h.csv", "--report", "h.json"], tmp_path)
    assert r.returncode == 0, r.stderr
    lines = (tmp_path / "h.csv").read_text().strip().splitlines()
    assert lines[0] == "x1,y1,x2,y2,region,branch,residual"
    assert len(lines) == 101
    rep = json.loads((tmp_path / "h.json").read_text())
    assert rep["failures"] == []
    assert rep["max_lagrangian_defect"] <= 1e-9


def test_link_subcommand(tmp_path):
    _run(["generate", "product", "--n", "4", "--out", "k.json"], tmp_path)
    r = _run(["link", "k.json", "--vertex", "0", "--out", "link.json",
              "--svg", "link.svg"], tmp_path)
    assert r.returncode == 0, r.stderr
    doc = json.loads((tmp_path / "link.json").read_text())
    assert doc["corner_count"] == 4 and doc["unknot_certified"]
    assert (tmp_path / "link.svg").read_text().startswith("<svg")


def test_conjecture_subcommand(tmp_path):
    r = _run(["conjecture", "--tau", "1", "--eps-patterns", "++++",
              "--delta", "1/2", "--t", "1e-8", "--out-dir", "out",
              "--no-svg"], tmp_path)
    assert r.returncode == 0, r.stderr
    rows = json.loads((tmp_path / "out" / "table.json").read_text())["rows"]
    assert len(rows) == 1
    assert rows[0]["rot_equals_half_mu_smooth"] is True
    assert (tmp_path / "out" / "table.csv").exists()


def test_front_svg_standard_unknot_two_cusps(tmp_path):
    k = standard_legendrian_unknot(720)
    fr = front_points(k)
    assert len(front_cusps(fr)) == 2
    emit_front_svg(k, tmp_path / "u.svg")
    svg = (tmp_path / "u.svg").read_text()
    assert "polyline" in svg and svg.count("circle") == 2


def test_front_svg_empty(tmp_path):
    emit_front_svg(np.zeros((0, 2)), tmp_path / "e.svg")
    svg = (tmp_path / "e.svg").read_text()
    assert svg.startswith("<svg") and "empty" in svg


def test_front_svg_io_error(tmp_path):
    with pytest.raises(LagpolyError) as err:
        emit_front_svg(np.zeros((0, 2)), tmp_path / "no" / "dir" / "x.svg")
    assert err.value.code == "IO_ERROR"


def test_main_exit_codes(tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(["generate", "product", "--n", "4", "--out", "k.json"]) == 0
    assert main(["validate", "k.json"]) == 0
    assert main(["validate", "missing.json"]) == 1
