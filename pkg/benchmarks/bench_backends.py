#!/usr/bin/env python3
"""Benchmark the numba-jitted hot kernels against the pure-numpy fallback.

The micro-kernels (complex log-gamma, reciprocal gamma, the two contour
integrands, the series summation loop) are timed in-process since both
implementations stay importable; the end-to-end Mellin-Barnes evaluation is
timed in subprocesses with BESSELHR_BACKEND forced either way.

Usage: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from besselhr import _backend as bk


def timeit(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_micro(quick=False):
    rng = np.random.default_rng(0)
    m = 20_000 if quick else 200_000
    z = rng.uniform(-30, 30, m) + 1j * rng.uniform(-30, 30, m)
    lam = np.array([0.3, -0.1, -0.2], dtype=np.complex128)
    sig = np.array([1.0, 1.0, -1.0])
    s = 0.75 + 1j * rng.uniform(-40, 40, m)
    dl = np.array([0, 1, 0], dtype=np.int64)
    zf = 0.3 + 0.2j
    diffs = np.array([0.4, 0.0, -0.3], dtype=np.complex128)

    cases = {
        "loggamma_arr": lambda impl: impl["loggamma_arr"](z),
        "recip_gamma_arr": lambda impl: impl["recip_gamma_arr"](z),
        "mb_j_integrand": lambda impl: impl["mb_j_integrand"](s, lam, sig, 3, 0.7),
        "mb_kernel_integrand": lambda impl: impl["mb_kernel_integrand"](
            s, lam, dl, 0, 0.7
        ),
        "series_sum": lambda impl: [
            impl["series_sum"](zf, diffs, 1e-14, 10, 200, 3) for _ in range(400)
        ],
    }

    print(f"\nmicro-kernels ({m} points; best of 5)")
    print(f"{'kernel':24s} {'numpy':>10s} {'numba':>10s} {'speedup':>9s}  agree")
    for name, call in cases.items():
        t_np = timeit(call, bk.IMPLS["numpy"])
        if "numba" in bk.IMPLS:
            call(bk.IMPLS["numba"])  # compile before timing
            t_nb = timeit(call, bk.IMPLS["numba"])
            a = call(bk.IMPLS["numpy"])
            b = call(bk.IMPLS["numba"])
            if name == "series_sum":
                ok = abs(a[0][0] - b[0][0]) < 1e-13 * max(1.0, abs(a[0][0]))
            else:
                ok = np.allclose(a, b, rtol=5e-13, atol=1e-280) or np.allclose(
                    np.exp(a - b), 1.0, rtol=1e-12, atol=0
                )
            print(
                f"{name:24s} {t_np*1e3:9.2f}ms {t_nb*1e3:9.2f}ms "
                f"{t_np/t_nb:8.1f}x  {ok}"
            )
        else:
            print(f"{name:24s} {t_np*1e3:9.2f}ms {'n/a':>10s}")


def bench_end_to_end():
    code = (
        "import time, besselhr\n"
        "from besselhr.core import SignVector, SpectralIndex\n"
        "from besselhr.mellinbarnes import mb_eval\n"
        "si = SpectralIndex([0.3, -0.1, -0.2]); sv = SignVector('++-')\n"
        "mb_eval(2.0, sv, si, 1e-10)\n"
        "t0 = time.perf_counter()\n"
        "for x in (0.5, 1.0, 2.0, 5.0, 10.0, 20.0):\n"
        "    mb_eval(x, sv, si, 1e-10)\n"
        "print(besselhr.BACKEND, time.perf_counter() - t0)\n"
    )
    print("\nend-to-end mb_eval over 6 points (fresh process each)")
    for backend in ("numpy", "numba"):
        env = dict(os.environ, BESSELHR_BACKEND=backend)
        out = subprocess.run(
            [sys.executable, "-c", code], env=env, capture_output=True, text=True
        )
        if out.returncode == 0:
            name, t = out.stdout.split()
            print(f"  {name:6s} {float(t)*1e3:9.1f} ms")
        else:
            print(f"  {backend}: failed\n{out.stderr}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    print(f"active backend: {bk.BACKEND}")
    bench_micro(args.quick)
    bench_end_to_end()
