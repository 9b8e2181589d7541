"""Benchmark the compiled kernels against the pure-numpy fallback.

Runs the same workload (Howell normal forms, kernels, and truncated
matrix products) under both backends.  The backend is chosen at import
time via the GWA_NO_NUMBA environment flag, so each measurement runs in
its own subprocess.

Usage:
    python3 benchmarks/bench_howell.py            # compare both backends
    python3 benchmarks/bench_howell.py --backend pure --size 48 --reps 5
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def workload(size: int, reps: int, modulus: int, t: int, seed: int) -> dict:
    from gwacat import howell, smatrix

    rng = np.random.default_rng(seed)
    A = rng.integers(0, modulus, size=(size, size)).astype(np.int64)
    S1 = rng.integers(0, modulus, size=(size, size, t)).astype(np.int64)
    S2 = rng.integers(0, modulus, size=(size, size, t)).astype(np.int64)

    # warm up so JIT compilation is excluded from the measurement
    howell.howell_form(A[:4, :4].copy(), modulus)
    howell.kernel(A[:4, :4].copy(), modulus)
    smatrix.smat_mul(S1[:4, :4], S2[:4, :4], modulus)

    timings = {}
    start = time.perf_counter()
    for _ in range(reps):
        howell.howell_form(A.copy(), modulus)
    timings["howell_form"] = (time.perf_counter() - start) / reps

    start = time.perf_counter()
    for _ in range(reps):
        howell.kernel(A.copy(), modulus)
    timings["kernel"] = (time.perf_counter() - start) / reps

    start = time.perf_counter()
    for _ in range(reps):
        smatrix.smat_mul(S1, S2, modulus)
    timings["smat_mul"] = (time.perf_counter() - start) / reps
    return timings


def run_backend(backend: str, args) -> dict:
    env = dict(os.environ)
    if backend == "pure":
        env["GWA_NO_NUMBA"] = "1"
    else:
        env.pop("GWA_NO_NUMBA", None)
    cmd = [
        sys.executable, os.path.abspath(__file__),
        "--backend", backend, "--size", str(args.size), "--reps", str(args.reps),
        "--modulus", str(args.modulus), "--t", str(args.t), "--seed", str(args.seed),
        "--json",
    ]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--backend", choices=["numba", "pure"], default=None)
    parser.add_argument("--size", type=int, default=48)
    parser.add_argument("--reps", type=int, default=5)
    parser.add_argument("--modulus", type=int, default=4)
    parser.add_argument("--t", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    if args.backend is not None:
        if args.backend == "pure":
            os.environ["GWA_NO_NUMBA"] = "1"
        timings = workload(args.size, args.reps, args.modulus, args.t, args.seed)
        if args.json:
            print(json.dumps(timings))
        else:
            for name, secs in timings.items():
                print(f"{args.backend:6s} {name:12s} {secs * 1e3:10.3f} ms")
        return

    results = {b: run_backend(b, args) for b in ("numba", "pure")}
    print(f"size={args.size} reps={args.reps} modulus={args.modulus} t={args.t}")
    print(f"{'kernel':12s} {'numba':>12s} {'pure':>12s} {'speedup':>9s}")
    for name in results["numba"]:
        fast, slow = results["numba"][name], results["pure"][name]
        ratio = slow / fast if fast > 0 else float("inf")
        print(f"{name:12s} {fast * 1e3:10.3f} ms {slow * 1e3:10.3f} ms {ratio:8.1f}x")


if __name__ == "__main__":
    main()
