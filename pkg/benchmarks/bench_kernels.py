"""Compare the compiled kernels with the numpy fallback.

Usage::

    python benchmarks/bench_kernels.py [--repeat 5]

The end-to-end row times one ``spectrum(sample_matrix(...))`` call under each
backend; it is dominated by the LAPACK eigensolve, so the two backends
should be close there.
"""
from __future__ import annotations

import argparse
import importlib
import os
import subprocess
import sys
import timeit

import numpy as np


def bench(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def end_to_end(pure: bool, p: int, n: int, repeat: int) -> float:
    code = (
        "import timeit\n"
        "from quatmp import spectrum, sample_matrix, gaussian, BACKEND\n"
        f"t = min(timeit.repeat(lambda: spectrum(sample_matrix({p}, {n}, gaussian(), 0)), number=1, repeat={repeat}))\n"
        "print(BACKEND, t)\n"
    )
    env = dict(os.environ, QUATMP_PURE_PYTHON="1" if pure else "0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    backend, t = out.stdout.split()
    return backend, float(t)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    fb = importlib.import_module("quatmp._fallback")
    try:
        ck = importlib.import_module("quatmp._kernels")
    except ImportError:
        print("compiled kernels are not built; only the fallback is available")
        return 1

    rng = np.random.default_rng(0)
    a = np.sort(rng.random(4000))
    b = np.sort(rng.random(3000))
    lam = np.sort(rng.random(1600) * 6)
    z = np.array([1j, 1 + 1j, 2 + 0.5j] * 10)

    cases = [
        ("counter_uniforms 400x800x4", lambda m: m.counter_uniforms(1, 400, 800, 4)),
        ("ks_two_sample 4000 vs 3000", lambda m: m.ks_two_sample(a, b)),
        ("stieltjes_sums 1600 x 30", lambda m: m.stieltjes_sums(lam, z)),
        ("max_pair_gap 1600", lambda m: m.max_pair_gap(lam)),
    ]
    print(f"{'kernel':32s} {'numpy [ms]':>12s} {'cython [ms]':>12s} {'speedup':>8s}")
    for name, call in cases:
        tf = bench(lambda: call(fb), args.repeat)
        tc = bench(lambda: call(ck), args.repeat)
        print(f"{name:32s} {tf * 1e3:12.3f} {tc * 1e3:12.3f} {tf / tc:8.1f}")

    for p, n in [(200, 400), (400, 800)]:
        _, tf = end_to_end(True, p, n, args.repeat)
        _, tc = end_to_end(False, p, n, args.repeat)
        print(f"{'spectrum ' + f'{p}x{n}':32s} {tf * 1e3:12.3f} {tc * 1e3:12.3f} {tf / tc:8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
