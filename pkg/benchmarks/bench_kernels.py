"""Compare the compiled kernels against the pure-python fallback.

The same workload runs twice in subprocesses, once with the compiled
extension and once with ``WPAIR_PURE_PYTHON=1``, and the wall times are
printed side by side:

    python benchmarks/bench_kernels.py

Pass ``--inner`` to run the workload once in the current interpreter and
emit JSON (used internally by the comparison driver).
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def _workload():
    from wpair import backend
    from wpair.numrange import numerical_radius

    rng = np.random.default_rng(42)
    results = {"backend": backend.backend_name()}

    # the golden-refinement pattern: one angle at a time on a tiny matrix,
    # thousands of times; this is what the compiled path specializes
    T6 = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    single = np.array([0.7])
    t0 = time.perf_counter()
    for _ in range(4000):
        backend.support_sweep(T6, single)
    results["refine_sweep_6x1x4000"] = time.perf_counter() - t0

    A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    H6 = (A + A.conj().T) / 2.0
    t0 = time.perf_counter()
    for _ in range(5000):
        backend.herm_eigh(H6, want_vectors=True)
    results["herm_eigh_6x5000"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(200):
        numerical_radius(T6)
    results["numerical_radius_6x200"] = time.perf_counter() - t0

    # batched and large shapes delegate to LAPACK inside the compiled
    # kernels, so these should come out even
    thetas = 2.0 * np.pi * np.arange(720) / 720.0
    t0 = time.perf_counter()
    for _ in range(50):
        backend.support_sweep(T6, thetas)
    results["coarse_sweep_6x720x50"] = time.perf_counter() - t0

    A = rng.standard_normal((120, 120)) + 1j * rng.standard_normal((120, 120))
    H = (A + A.conj().T) / 2.0
    t0 = time.perf_counter()
    for _ in range(100):
        backend.herm_eigh(H, want_vectors=True)
    results["herm_eigh_120x100"] = time.perf_counter() - t0

    return results


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--inner", action="store_true",
                    help="run once in-process and print JSON")
    args = ap.parse_args(argv)

    if args.inner:
        json.dump(_workload(), sys.stdout)
        print()
        return 0

    rows = {}
    for pure in ("0", "1"):
        env = dict(os.environ, WPAIR_PURE_PYTHON=pure)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--inner"],
            env=env, capture_output=True, text=True, check=True)
        rows[pure] = json.loads(out.stdout)

    if rows["0"]["backend"] != "compiled":
        print("note: compiled extension not importable, both runs used "
              "the python fallback")
    keys = [k for k in rows["0"] if k != "backend"]
    width = max(len(k) for k in keys)
    print(f"{'kernel workload':<{width}}  {'compiled':>9}  {'python':>9}"
          f"  {'speedup':>7}")
    for k in keys:
        tc, tp = rows["0"][k], rows["1"][k]
        print(f"{k:<{width}}  {tc:>8.3f}s  {tp:>8.3f}s  {tp / tc:>6.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
