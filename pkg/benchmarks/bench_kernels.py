"""Timing comparison of the compiled and pure-numpy crossing/linking kernels.

Run twice: once normally (compiled backend if available) and once with
LAGPOLY_NO_NUMBA=1 to force the numpy fallback; or just run this script,
which does both in subprocesses and prints a table.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _trefoil(n: int) -> np.ndarray:
    t = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    return np.stack([np.sin(t) + 2 * np.sin(2 * t),
                     np.cos(t) - 2 * np.cos(2 * t),
                     -np.sin(3 * t)], axis=1)


def _run_case(n: int, repeats: int) -> dict:
    from lagpoly._kernels import KERNEL_BACKEND, gauss_linking, signed_crossing_sum

    a = _trefoil(n)
    b = _trefoil(n) * 1.3 + np.array([0.1, 0.2, 2.5])
    # warm-up compiles the jitted kernels so timings measure steady state
    signed_crossing_sum(a[:, :2], a[:, 2], b[:, :2], b[:, 2])
    gauss_linking(a[: min(n, 400)], b[: min(n, 400)])

    t0 = time.perf_counter()
    for _ in range(repeats):
        signed_crossing_sum(a[:, :2], a[:, 2], b[:, :2], b[:, 2])
    t_cross = (time.perf_counter() - t0) / repeats

    m = min(n, 1200)
    t0 = time.perf_counter()
    for _ in range(repeats):
        gauss_linking(a[:m], b[:m])
    t_gauss = (time.perf_counter() - t0) / repeats

    return {"backend": KERNEL_BACKEND, "n": n,
            "crossing_s": t_cross, "gauss_s": t_gauss}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", default="500,2000,8000")
    ap.add_argument("--repeats", type=int, default=5)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if args.child:
        rows = [_run_case(n, args.repeats) for n in sizes]
        print(json.dumps(rows))
        return 0

    results = {}
    for label, env_extra in [("numba", {}), ("numpy", {"LAGPOLY_NO_NUMBA": "1"})]:
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, __file__, "--child", "--sizes", args.sizes,
             "--repeats", str(args.repeats)],
            env=env, capture_output=True, text=True, check=True)
        rows = json.loads(out.stdout.strip().splitlines()[-1])
        results[label] = rows
        print(f"requested {label}: backend reported = {rows[0]['backend']}")

    print(f"\n{'n':>8} {'kernel':>10} {'numba (s)':>12} {'numpy (s)':>12} "
          f"{'speedup':>8}")
    for i, n in enumerate(sizes):
        for key in ("crossing_s", "gauss_s"):
            tn = results["numba"][i][key]
            tp = results["numpy"][i][key]
            print(f"{n:>8} {key[:-2]:>10} {tn:>12.3e} {tp:>12.3e} "
                  f"{tp / tn:>8.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
