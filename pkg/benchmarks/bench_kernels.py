#!/usr/bin/env python3
"""Benchmark the integer box-scan kernels: numba @njit vs pure numpy.

The scan is the library's only numeric hot loop (lattice-point enumeration
behind lattice-freeness, maximality and circumscribed-body search).  Both
backends must return bit-identical point lists; this script verifies that on
every size it times.

Usage: python benchmarks/bench_kernels.py [--max-side 220]
"""

import argparse
import time

import numpy as np

from latfree import _kernels


def cross_polytope_rows(d, radius):
    # |x_1| + ... + |x_d| <= radius, all sign patterns
    import itertools
    rows = [s for s in itertools.product((-1, 1), repeat=d)]
    rhs = [radius] * len(rows)
    return rows, rhs


def bench(side, d=3):
    rows, rhs = cross_polytope_rows(d, side)
    lo = tuple([-side] * d)
    hi = tuple([side] * d)
    total = (2 * side + 1) ** d
    out = {}
    times = {}
    for backend in ("numpy", "numba"):
        t0 = time.perf_counter()
        out[backend] = _kernels.scan_box(rows, rhs, lo, hi, force_backend=backend)
        times[backend] = time.perf_counter() - t0
    assert np.array_equal(out["numpy"], out["numba"]), "backends disagree"
    hits = len(out["numpy"])
    speedup = times["numpy"] / times["numba"]
    print(f"side={side:4d} box={total:>12,} hits={hits:>10,}  "
          f"numpy={times['numpy']*1e3:9.1f} ms  numba={times['numba']*1e3:9.1f} ms  "
          f"speedup={speedup:5.2f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-side", type=int, default=220)
    args = ap.parse_args()

    print(f"kernel backend default: {_kernels.backend()}")
    print("warming up the jit...")
    _kernels.scan_box([(1, 1, 1)], [1], (0, 0, 0), (1, 1, 1), force_backend="numba")

    side = 20
    while side <= args.max_side:
        bench(side)
        side *= 2


if __name__ == "__main__":
    main()
