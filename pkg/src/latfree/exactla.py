"""Exact rational linear algebra over tuples of Fractions / ints.

Scalars are ``fractions.Fraction`` (always stored in lowest terms with a
positive denominator, so equality and hashing are structural).  Vectors are
plain tuples, matrices are tuples of row tuples.  Integer lattice work (gcd
normalization, Hermite normal form with a unimodular witness, kernel and
saturation computations, lattice basis extension) is done on int tuples.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Vec = tuple[Fraction, ...]
IntVec = tuple[int, ...]
Mat = tuple[tuple[Fraction, ...], ...]
IntMat = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------

def vdot(x: Sequence, y: Sequence):
    return sum(a * b for a, b in zip(x, y))


def vadd(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def vscale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


def vneg(x: Sequence) -> tuple:
    return tuple(-a for a in x)


def is_zero_vec(x: Sequence) -> bool:
    return all(a == 0 for a in x)


def as_fractions(x: Sequence) -> Vec:
    return tuple(Fraction(a) for a in x)


def gcd_normalize(v: Sequence[int]) -> tuple[IntVec, int]:
    """Divide an integer vector by the gcd of its entries.

    Returns ``(p, scale)`` with ``v == scale * p``, ``scale > 0`` and the
    entries of ``p`` coprime.  The sign pattern of ``v`` is preserved.
    """
    v = tuple(int(a) for a in v)
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g == 0:
        raise ValueError("zero direction")
    return tuple(a // g for a in v), g


def primitive_vector(x: Sequence) -> IntVec:
    """Smallest positive integer multiple of a nonzero rational vector."""
    denoms = [Fraction(a).denominator for a in x]
    h = math.lcm(*denoms) if denoms else 1
    w = tuple(int(Fraction(a) * h) for a in x)
    p, _ = gcd_normalize(w)
    return p


def vector_content(x: Sequence) -> Fraction:
    """The positive rational c with x == c * primitive_vector(x)."""
    denoms = [Fraction(a).denominator for a in x]
    h = math.lcm(*denoms) if denoms else 1
    w = [int(Fraction(a) * h) for a in x]
    g = 0
    for a in w:
        g = math.gcd(g, a)
    if g == 0:
        raise ValueError("zero direction")
    return Fraction(g, h)


def lex_positive(v: Sequence) -> bool:
    """True when the first nonzero entry is positive."""
    for a in v:
        if a != 0:
            return a > 0
    return False


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

def mat_identity(n: int) -> IntMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> tuple:
    Bt = list(zip(*B))
    return tuple(tuple(vdot(row, col) for col in Bt) for row in A)


def mat_vec(A: Sequence[Sequence], x: Sequence) -> tuple:
    return tuple(vdot(row, x) for row in A)


def mat_transpose(A: Sequence[Sequence]) -> tuple:
    return tuple(zip(*A))


def mat_det(A: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    M = [[Fraction(a) for a in row] for row in A]
    if any(len(row) != n for row in M):
        raise ValueError("square matrix required")
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            if M[r][c] != 0:
                f = M[r][c] * inv
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return det


def mat_rank(A: Sequence[Sequence]) -> int:
    M = [[Fraction(a) for a in row] for row in A]
    rank = 0
    rows = len(M)
    cols = len(M[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank


def mat_inv(A: Sequence[Sequence]) -> Mat:
    """Exact inverse of a nonsingular square matrix."""
    n = len(A)
    M = [[Fraction(a) for a in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(A)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if M[i][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(n):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        r += 1
    return tuple(tuple(row[n:]) for row in M)


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a point set (-1 for empty input)."""
    if not points:
        return -1
    p0 = points[0]
    diffs = [vsub(p, p0) for p in points[1:]]
    if not diffs:
        return 0
    return mat_rank(diffs)


# ---------------------------------------------------------------------------
# Hermite normal form
# ---------------------------------------------------------------------------

def _hnf_upper(A: list[list[int]]) -> tuple[list[list[int]], list[list[int]]]:
    # Row echelon over Z: pivot = first nonzero of its row, positive, entries
    # above each pivot reduced into [0, pivot), zero rows last.
    m = len(A)
    n = len(A[0]) if m else 0
    H = [list(row) for row in A]
    U = [list(row) for row in mat_identity(m)]
    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][c]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            p = H[r][c]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // p
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-a for a in H[r]]
            U[r] = [-a for a in U[r]]
        p = H[r][c]
        for i in range(r):
            q = H[i][c] // p
            if q != 0:
                H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                U[i] = [a - q * b for a, b in zip(U[i], U[r])]
        r += 1
    return H, U


def hnf(A: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row-style Hermite normal form ``H = U @ A`` with ``|det U| = 1``.

    The convention is lower-triangular echelon: the pivot is the last nonzero
    entry of its row, pivots are positive with pivot columns increasing, and
    entries below a pivot are reduced into ``[0, pivot)``.  Zero rows sort
    last.  Total on integer matrices of any shape or rank.
    """
    A = [list(int(a) for a in row) for row in A]
    m = len(A)
    if m == 0:
        return (), ()
    n = len(A[0])
    rev = [row[::-1] for row in A]
    Hu, Uu = _hnf_upper(rev)
    # Undo the column reversal and flip the row order, then push zero rows
    # back to the bottom (the flips move them to the top).
    H = [Hu[m - 1 - i][::-1] for i in range(m)]
    U = [Uu[m - 1 - i] for i in range(m)]
    order = [i for i in range(m) if any(H[i])] + [i for i in range(m) if not any(H[i])]
    H = [H[i] for i in order]
    U = [U[i] for i in order]
    return tuple(tuple(r) for r in H), tuple(tuple(r) for r in U)


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> IntMat:
    """Lattice basis of ``{x in Z^n : A @ x = 0}``.

    ``ncols`` must be given when ``A`` has no rows.
    """
    rows = [tuple(int(a) for a in row) for row in A]
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty system")
        return mat_identity(ncols)
    n = len(rows[0])
    H, U = hnf(mat_transpose(rows))
    return tuple(U[i] for i in range(n) if not any(H[i]))


def lattice_basis_of_span(vectors: Sequence[Sequence[int]], dim: int) -> IntMat:
    """Canonical lattice basis of ``span(vectors) ∩ Z^d``.

    The span is saturated: the result generates every integer point of the
    rational span, not merely the sublattice generated by the input.  The
    basis is returned in Hermite normal form, so it is unique per subspace.
    """
    vecs = [tuple(int(a) for a in v) for v in vectors if any(v)]
    if not vecs:
        return ()
    complement = integer_kernel(vecs, ncols=dim)
    basis = integer_kernel(complement, ncols=dim)
    H, _ = hnf(basis)
    return tuple(row for row in H if any(row))


def extend_lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> IntMat:
    """Extend a basis of a primitive sublattice to a basis of ``Z^d``.

    The input rows must be linearly independent and must generate
    ``span(input) ∩ Z^d``; otherwise a ``ValueError`` is raised.  The result
    is a ``d × d`` integer matrix with ``|det| = 1`` whose first ``k`` rows
    are the input rows verbatim.
    """
    Z = [tuple(int(a) for a in v) for v in vectors]
    k = len(Z)
    if k == 0:
        return mat_identity(dim)
    if any(len(z) != dim for z in Z):
        raise ValueError("dimension mismatch")
    if mat_rank(Z) != k:
        raise ValueError("input vectors are linearly dependent")
    H, U = hnf(mat_transpose(Z))
    top = tuple(tuple(row[:k]) for row in H[:k])
    if top != mat_identity(k):
        raise ValueError("input is not a lattice basis of span ∩ Z^d")
    # Z = [I 0] @ B for B = (U^T)^{-1}, so B is a unimodular completion whose
    # first k rows are exactly Z.
    B = mat_inv(mat_transpose(U))
    out = []
    for row in B:
        introw = tuple(int(a) for a in row)
        if any(Fraction(a) != b for a, b in zip(row, introw)):
            raise AssertionError("unimodular inverse was not integral")
        out.append(introw)
    if out[:k] != [tuple(z) for z in Z]:
        raise AssertionError("basis extension lost the input rows")
    d = mat_det(out)
    if abs(d) != 1:
        raise AssertionError("basis extension is not unimodular")
    return tuple(out)


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def isqrt_ceil(n: int) -> int:
    """Smallest integer s with s*s >= n (n >= 0)."""
    if n <= 0:
        return 0
    s = math.isqrt(n)
    return s if s * s == n else s + 1
