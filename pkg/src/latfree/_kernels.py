"""Hot integer kernels: scan a box for points satisfying A @ x <= rhs.

This is the one numeric inner loop of the library (lattice-point
enumeration; everything else is arbitrary-precision rational work).  Two
interchangeable backends produce bit-identical results:

* a numba ``@njit`` kernel (default when numba imports), and
* a pure-numpy fallback.

Selection: set ``LATFREE_KERNELS=numpy`` or ``LATFREE_KERNELS=numba``;
unset picks numba when available.  All arithmetic is int64 and callers are
responsible for guarding against overflow (see :func:`fits_int64`); the
guarded pure-Python fallback lives in :mod:`latfree.lattice`.

Points are emitted in lexicographic order (first coordinate slowest), so the
backend never affects output bytes anywhere downstream.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

_INT64_GUARD = 2**62


def fits_int64(A, rhs, lo, hi) -> bool:
    """Conservative check that the scan stays inside int64."""
    bound = 0
    for row, b in zip(A, rhs):
        s = sum(abs(int(a)) * max(abs(int(l)), abs(int(h)))
                for a, l, h in zip(row, lo, hi))
        bound = max(bound, s + abs(int(b)))
    return bound < _INT64_GUARD


def _scan_numpy(A, rhs, lo, hi, counts):
    d = lo.shape[0]
    total = int(np.prod(counts))
    out = []
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coords = np.empty((idx.shape[0], d), dtype=np.int64)
        rem = idx
        for j in range(d - 1, -1, -1):
            coords[:, j] = lo[j] + rem % counts[j]
            rem = rem // counts[j]
        if A.shape[0]:
            ok = np.all(coords @ A.T <= rhs[np.newaxis, :], axis=1)
            coords = coords[ok]
        out.append(coords)
    if not out:
        return np.empty((0, d), dtype=np.int64)
    return np.concatenate(out, axis=0)


_numba_scan = None


def _get_numba_scan():
    global _numba_scan
    if _numba_scan is None:
        from numba import njit

        @njit(cache=False)
        def scan(A, rhs, lo, hi, counts):  # pragma: no cover - jitted
            d = lo.shape[0]
            n = A.shape[0]
            total = np.int64(1)
            for j in range(d):
                total *= counts[j]
            x = np.empty(d, dtype=np.int64)
            m = 0
            for flat in range(total):
                rem = flat
                for j in range(d - 1, -1, -1):
                    x[j] = lo[j] + rem % counts[j]
                    rem //= counts[j]
                ok = True
                for i in range(n):
                    s = np.int64(0)
                    for j in range(d):
                        s += A[i, j] * x[j]
                    if s > rhs[i]:
                        ok = False
                        break
                if ok:
                    m += 1
            out = np.empty((m, d), dtype=np.int64)
            k = 0
            for flat in range(total):
                rem = flat
                for j in range(d - 1, -1, -1):
                    x[j] = lo[j] + rem % counts[j]
                    rem //= counts[j]
                ok = True
                for i in range(n):
                    s = np.int64(0)
                    for j in range(d):
                        s += A[i, j] * x[j]
                    if s > rhs[i]:
                        ok = False
                        break
                if ok:
                    for j in range(d):
                        out[k, j] = x[j]
                    k += 1
            return out

        _numba_scan = scan
    return _numba_scan


def backend() -> str:
    """Active kernel backend: 'numba' or 'numpy'."""
    choice = os.environ.get("LATFREE_KERNELS", "").strip().lower()
    if choice == "numpy":
        return "numpy"
    if choice == "numba":
        return "numba"
    if choice not in ("", "auto"):
        warnings.warn(f"unknown LATFREE_KERNELS={choice!r}; using auto selection")
    try:
        import numba  # noqa: F401
    except ImportError:  # pragma: no cover - numba is a declared dependency
        return "numpy"
    return "numba"


def scan_box(A, rhs, lo, hi, force_backend: str | None = None) -> np.ndarray:
    """Integer points x with lo <= x <= hi (componentwise) and A @ x <= rhs.

    Inputs are integer sequences; the result is an int64 array in
    lexicographic order.  Callers must pre-check :func:`fits_int64`.
    """
    lo = np.asarray(list(lo), dtype=np.int64)
    hi = np.asarray(list(hi), dtype=np.int64)
    d = lo.shape[0]
    A = np.asarray([list(row) for row in A], dtype=np.int64).reshape(-1, d)
    rhs = np.asarray(list(rhs), dtype=np.int64)
    counts = hi - lo + 1
    if np.any(counts <= 0):
        return np.empty((0, d), dtype=np.int64)
    which = force_backend or backend()
    if which == "numba":
        try:
            return _get_numba_scan()(A, rhs, lo, hi, counts)
        except ImportError:  # pragma: no cover
            warnings.warn("numba unavailable; falling back to the numpy kernel")
    return _scan_numpy(A, rhs, lo, hi, counts)
