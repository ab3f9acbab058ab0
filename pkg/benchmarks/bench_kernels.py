#!/usr/bin/env python3
"""Benchmark the compiled bicomplex kernel against the pure-Python fallback.

Micro-kernels are timed in-process against both classes; the end-to-end
congruence workload is timed in subprocesses so each run selects its backend
at import, exactly as library users do.

    python3 benchmarks/bench_kernels.py [--n 200000] [--skip-e2e]
"""

import argparse
import importlib
import json
import os
import subprocess
import sys
import time


def _time(fn, n):
    t0 = time.perf_counter()
    fn(n)
    return time.perf_counter() - t0


def micro_suite(B, n):
    p = B(1.3 + 0.2j, -0.7 + 2.1j)
    q = B(0.4 - 1.2j, 0.9 + 0.3j)

    def arithmetic(n):
        acc = p
        for _ in range(n):
            acc = (acc * q + p) * q.conj() - q
            if abs(acc) > 1e6:
                acc = p
        return acc

    def norms(n):
        s = 0.0
        for _ in range(n):
            s += abs(p.cn()) + q.norm2()
        return s

    def ringleb(n):
        for _ in range(n):
            e, f = p.ringleb()
            B.from_ringleb(e, f)

    def inversion(n):
        for _ in range(n):
            p.inverse()

    return {
        "arithmetic_chain": _time(arithmetic, n),
        "complex_norms": _time(norms, n),
        "ringleb_roundtrip": _time(ringleb, n),
        "inversion": _time(inversion, n),
    }


E2E_SNIPPET = r"""
import json, time
from bhm.core import BACKEND
from bhm.holo import HoloFn, Var, Const
from bhm.slices import slice_data, projectable_roots, tracked_real_branch, wave_residual
from bhm.core import I2

Q = Var()
data = slice_data("minkowski_c", HoloFn(Q), HoloFn(Q) * HoloFn.const(I2))
t0 = time.perf_counter()
npts = 0
vals = [-2.0 + 4.0 * i / 7 for i in range(8)]
for x1 in vals:
    for x2 in vals:
        for x3 in vals:
            roots = projectable_roots("minkowski_c", data, (x1, x2, x3))
            sol = min((r for r in roots if r.gradient is not None),
                      key=lambda r: abs(r.q))
            phi = tracked_real_branch("minkowski_c", data, (x1, x2, x3), q0=sol.q)
            wave_residual("minkowski_c", phi, (x1, x2, x3))
            npts += 1
print(json.dumps({"backend": BACKEND, "points": npts,
                  "seconds": time.perf_counter() - t0}))
"""


def run_e2e(pure_python):
    env = dict(os.environ)
    env.pop("BHM_PURE_PYTHON", None)
    if pure_python:
        env["BHM_PURE_PYTHON"] = "1"
    out = subprocess.run([sys.executable, "-c", E2E_SNIPPET],
                         capture_output=True, env=env, check=True)
    return json.loads(out.stdout)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=200_000,
                        help="micro-benchmark iterations per kernel")
    parser.add_argument("--skip-e2e", action="store_true",
                        help="skip the end-to-end congruence sweep")
    args = parser.parse_args()

    backends = {}
    for name, mod in (("cython", "bhm._kernels"), ("python", "bhm._kernels_py")):
        try:
            backends[name] = importlib.import_module(mod).Bicomplex
        except ImportError:
            print(f"{name}: not available")

    results = {name: micro_suite(B, args.n) for name, B in backends.items()}
    kernels = sorted({k for r in results.values() for k in r})
    width = max(len(k) for k in kernels) + 2
    header = f"{'micro-kernel'.ljust(width)}" + "".join(
        f"{name:>12}" for name in results
    )
    if len(results) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for k in kernels:
        row = k.ljust(width)
        times = [results[name][k] for name in results]
        for t in times:
            row += f"{t * 1e9 / args.n:>10.0f}ns"
        if len(times) == 2:
            row += f"{times[1] / times[0]:>9.1f}x"
        print(row)

    if not args.skip_e2e:
        print("\nend-to-end: disc congruence solve + wave residuals, 512 grid points")
        rows = []
        for pure in (False, True):
            r = run_e2e(pure)
            rows.append(r)
            print(f"  backend={r['backend']:<8} {r['seconds']:.2f}s "
                  f"({1e3 * r['seconds'] / r['points']:.2f} ms/point)")
        if len(rows) == 2 and rows[0]["backend"] != rows[1]["backend"]:
            print(f"  speedup: {rows[1]['seconds'] / rows[0]['seconds']:.2f}x")


if __name__ == "__main__":
    main()
