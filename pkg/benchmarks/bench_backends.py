#!/usr/bin/env python3
"""Compare the compiled rational kernel against the pure fallback.

The backend is chosen at import time, so each side runs in its own
subprocess with MONOINV_BACKEND forced.  Workloads: a rational-arithmetic
microbenchmark (the hot inner loop) and two law batches (end-to-end).

Usage: python3 benchmarks/bench_backends.py [--n 1500]
"""

import argparse
import json
import os
import subprocess
import sys

SRC = os.path.join(os.path.dirname(__file__), "..", "src")

WORKER = r"""
import json, sys, time
from monoinv.exactnum import BACKEND, rat
from monoinv.laws import GenConfig, run_law

n = int(sys.argv[1])
out = {"backend": BACKEND}

t0 = time.perf_counter()
acc = rat(0)
x = rat(3, 7)
y = rat(-22, 5)
for i in range(200_000):
    acc = acc + x * y - x / y
    if i % 1000 == 0:
        acc = rat(i % 17, 13)
out["micro_ops"] = time.perf_counter() - t0

cfg = GenConfig(seed=2024, max_knots=12)
for law in ("GALOIS", "MAIN_EQUIV"):
    t0 = time.perf_counter()
    rep = run_law(law, n, cfg)
    assert rep.passed
    out[law] = time.perf_counter() - t0

print(json.dumps(out))
"""


def run_side(backend, n):
    env = dict(os.environ)
    env["PYTHONPATH"] = SRC + os.pathsep + env.get("PYTHONPATH", "")
    env["MONOINV_BACKEND"] = backend
    proc = subprocess.run([sys.executable, "-c", WORKER, str(n)],
                          capture_output=True, text=True, env=env)
    if proc.returncode != 0:
        raise SystemExit(f"{backend} worker failed:\n{proc.stderr}")
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=1500, help="instances per law batch")
    args = ap.parse_args()

    results = {}
    for backend in ("pure", "compiled"):
        try:
            results[backend] = run_side(backend, args.n)
        except SystemExit as e:
            print(f"skipping {backend}: {e}", file=sys.stderr)

    if "compiled" not in results:
        print("compiled kernel not built; run `python3 setup.py build_ext --inplace`")
        return

    names = ["micro_ops", "GALOIS", "MAIN_EQUIV"]
    print(f"{'workload':<12} {'pure [s]':>10} {'compiled [s]':>13} {'speedup':>9}")
    for name in names:
        p = results["pure"][name]
        c = results["compiled"][name]
        print(f"{name:<12} {p:>10.3f} {c:>13.3f} {p / c:>8.2f}x")


if __name__ == "__main__":
    main()
