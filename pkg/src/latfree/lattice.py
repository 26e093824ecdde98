"""Lattice-side queries on rational polyhedra.

Integer-point enumeration, lattice-freeness, maximality of lattice-free
bodies via the Lovász facet criterion, max-facet-width, equivalence under
unimodular transformations plus integer translations, and the rational
search bounds used to enumerate circumscribed maximal bodies.

Unbounded bodies are handled through their lineality space: a unimodular
change of coordinates maps ``span ∩ Z^d`` onto ``Z^k × {0}`` and the query
reduces to the bounded factor.  Bodies whose recession cone is *not* a
linear space are out of the exactly decidable fragment (that would need
general integer-feasibility machinery) except when the recession cone is
full-dimensional, in which case interior integer points always exist.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import _kernels
from . import exactla as xl
from .polyhedra import (
    Constraint,
    GeometryError,
    Polyhedron,
    UnsupportedGeometryError,
)

INFINITE_WIDTH = math.inf


# ---------------------------------------------------------------------------
# integer point enumeration
# ---------------------------------------------------------------------------

def _scan_python(rows, rhs, lo, hi):
    out = []
    ranges = [range(l, h + 1) for l, h in zip(lo, hi)]
    for x in itertools.product(*ranges):
        if all(sum(a * c for a, c in zip(row, x)) <= b for row, b in zip(rows, rhs)):
            out.append(x)
    return out


def lattice_points(P: Polyhedron, strict: bool = False) -> list[tuple[int, ...]]:
    """All points of ``P ∩ Z^d`` (interior points only when ``strict``).

    ``P`` must be bounded.  Enumerates the vertex bounding box and filters
    by the scaled-integer constraint system; points come out in
    lexicographic order regardless of the kernel backend.
    """
    if P.is_empty:
        return []
    if P.rays or P.lines:
        raise GeometryError("unbounded polyhedron; reduce along its lineality first")
    d = P.dim
    lo, hi = [], []
    for j in range(d):
        vals = [v[j] for v in P.vertices]
        lo.append(xl.ceil_fraction(min(vals)))
        hi.append(xl.floor_fraction(max(vals)))
        if lo[-1] > hi[-1]:
            return []
    rows, rhs = [], []
    for c in P.constraints:
        q = c.b.denominator
        rows.append(tuple(q * a for a in c.a))
        rhs.append(c.b.numerator - (1 if strict else 0))
    if _kernels.fits_int64(rows, rhs, lo, hi):
        arr = _kernels.scan_box(rows, rhs, lo, hi)
        return [tuple(int(v) for v in row) for row in arr]
    return _scan_python(rows, rhs, lo, hi)


# ---------------------------------------------------------------------------
# lineality reduction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LinealityReduction:
    """Unimodular coordinates splitting off the lineality lattice.

    ``basis`` is a basis of Z^d whose first ``k`` rows span the lineality
    lattice; in the new coordinates ``y`` (where ``x = basis^T y``) the body
    is ``R^k × factor``.
    """

    basis: tuple[tuple[int, ...], ...]
    basis_inv: tuple[tuple[int, ...], ...]
    k: int
    factor: Polyhedron

    def lift_constraints(self, cons: Sequence[Constraint]) -> list[tuple[tuple, Fraction]]:
        """Map factor constraints back to ambient raw (a, b) pairs."""
        d = len(self.basis)
        out = []
        for c in cons:
            a_y = tuple([0] * self.k + list(c.a))
            a_x = xl.mat_vec(self.basis_inv, a_y)
            out.append((a_x, c.b))
        return out


def lineality_reduction(P: Polyhedron) -> LinealityReduction:
    """Split a polyhedron with lineality into ``R^k × factor`` exactly."""
    if P.is_empty:
        raise GeometryError("empty polyhedron")
    if not P.lines:
        raise GeometryError("no lineality to reduce")
    d = P.dim
    k = len(P.lines)
    W = xl.extend_lattice_basis(P.lines, d)
    reduced = []
    for c in P.constraints:
        a_y = xl.mat_vec(W, c.a)
        if any(a_y[:k]):
            raise AssertionError("constraint normal not orthogonal to the lineality space")
        reduced.append((a_y[k:], c.b))
    factor = Polyhedron.from_inequalities(d - k, reduced)
    Winv = tuple(tuple(int(v) for v in row) for row in xl.mat_inv(W))
    return LinealityReduction(W, Winv, k, factor)


# ---------------------------------------------------------------------------
# lattice-freeness and maximality
# ---------------------------------------------------------------------------

def _require_full_dim(L: Polyhedron):
    if L.is_empty or L.affine_dim() != L.dim:
        raise GeometryError("full-dimensional body required")


def is_lattice_free(L: Polyhedron) -> bool:
    """True iff the interior of the full-dimensional body misses Z^d."""
    _require_full_dim(L)
    if L.is_bounded:
        return not lattice_points(L, strict=True)
    if L.rays:
        rec_rank = xl.mat_rank(list(L.rays) + list(L.lines))
        if rec_rank == L.dim:
            # A full-dimensional recession cone swallows a fundamental cell
            # of some full-rank sublattice, so the interior hits Z^d.
            return False
        raise UnsupportedGeometryError(
            "recession cone is neither bounded-reducible nor full-dimensional; "
            "exact lattice-freeness is not decided for this fragment")
    red = lineality_reduction(L)
    return not lattice_points(red.factor, strict=True)


def _maximal_bounded(L: Polyhedron) -> bool:
    # Full-dimensional lattice-free polytope: maximal iff the relative
    # interior of every facet contains an integer point.
    pts = lattice_points(L)
    cons = L.constraints
    for i, c in enumerate(cons):
        found = False
        for z in pts:
            if c.value(z) != c.b:
                continue
            if all(cons[j].holds_strictly(z) for j in range(len(cons)) if j != i):
                found = True
                break
        if not found:
            return False
    return True


def is_maximal_lattice_free(L: Polyhedron) -> bool:
    """Maximality test for lattice-free bodies (facet-relint criterion).

    Unbounded input must have a linear recession cone; it is reduced to its
    bounded factor.  A body with recession rays is never maximal
    lattice-free, so those return False.
    """
    _require_full_dim(L)
    if L.rays:
        if xl.mat_rank(list(L.rays) + list(L.lines)) == L.dim:
            raise GeometryError("not lattice-free")
        return False
    if L.lines:
        factor = lineality_reduction(L).factor
        if lattice_points(factor, strict=True):
            raise GeometryError("not lattice-free")
        return _maximal_bounded(factor)
    if lattice_points(L, strict=True):
        raise GeometryError("not lattice-free")
    return _maximal_bounded(L)


# ---------------------------------------------------------------------------
# max-facet-width
# ---------------------------------------------------------------------------

def max_facet_width(L: Polyhedron):
    """Minimal m such that L is an intersection of integral slabs
    ``{b - m <= <a, x> <= b}``; ``math.inf`` when no such m exists.

    Per facet with primitive normal a and value b = p/q in lowest terms the
    requirement is ``ceil(q * (b - min_L <a, x>))``: the facet must be tight
    in some slab side, which forces the slab normal to be an integral
    multiple q*t*a, and t = 1 is feasible.  The width is the maximum over
    facets.
    """
    _require_full_dim(L)
    if not L.constraints:
        return INFINITE_WIDTH  # the whole space
    if L.rays:
        return INFINITE_WIDTH  # recession cone is not a linear space
    best = 0
    for c in L.constraints:
        lo = min(xl.vdot(c.a, v) for v in L.vertices)
        if any(xl.vdot(c.a, l) != 0 for l in L.lines):
            raise AssertionError("facet normal not orthogonal to the lineality space")
        width = xl.ceil_fraction(c.b.denominator * (c.b - lo))
        best = max(best, width)
    return best


def family_width(members: Sequence[Polyhedron]):
    """sup of member widths; 0 for the empty family (by convention)."""
    best = 0
    for L in members:
        w = max_facet_width(L)
        if w == INFINITE_WIDTH:
            return INFINITE_WIDTH
        best = max(best, w)
    return best


# ---------------------------------------------------------------------------
# equivalence under unimodular maps + integer translations
# ---------------------------------------------------------------------------

def _affine_base(vertices: Sequence, d: int):
    base = [vertices[0]]
    for v in vertices[1:]:
        if len(base) == d + 1:
            break
        if xl.affine_rank(base + [v]) == len(base):
            base.append(v)
    return base if len(base) == d + 1 else None


def zd_equivalent(A: Polyhedron, B: Polyhedron):
    """Witness (U, t) with ``B = U(A) + t``, U unimodular and t integral,
    or None.  Both polytopes must be bounded and full-dimensional.
    """
    if A.dim != B.dim:
        raise GeometryError("ambient dimension mismatch")
    if not (A.is_bounded and B.is_bounded) or A.is_empty or B.is_empty:
        raise GeometryError("bounded nonempty polytopes required")
    if A.affine_dim() != A.dim or B.affine_dim() != B.dim:
        raise GeometryError("full-dimensional polytopes required")
    d = A.dim
    va, vb = A.vertices, B.vertices
    if len(va) != len(vb):
        return None
    if A.volume() != B.volume():
        return None
    if len(lattice_points(A)) != len(lattice_points(B)):
        return None
    base = _affine_base(list(va), d)
    if base is None:
        raise AssertionError("full-dimensional polytope without an affine base")
    MA = xl.mat_transpose([xl.vsub(v, base[0]) for v in base[1:]])
    MAinv = xl.mat_inv(MA)
    vb_set = set(vb)
    for cand in itertools.permutations(vb, d + 1):
        if xl.affine_rank(cand) != d:
            continue
        MB = xl.mat_transpose([xl.vsub(w, cand[0]) for w in cand[1:]])
        U = xl.mat_mul(MB, MAinv)
        flat = [x for row in U for x in row]
        if any(x.denominator != 1 for x in flat):
            continue
        Ui = tuple(tuple(int(x) for x in row) for row in U)
        if abs(xl.mat_det(Ui)) != 1:
            continue
        t = xl.vsub(cand[0], xl.mat_vec(Ui, base[0]))
        if any(x.denominator != 1 for x in t):
            continue
        ti = tuple(int(x) for x in t)
        image = {tuple(xl.vadd(xl.mat_vec(Ui, v), ti)) for v in va}
        if image == vb_set:
            return Ui, ti
    return None


# ---------------------------------------------------------------------------
# search bounds for circumscribed maximal bodies
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationBounds:
    """Rational surrogate bounds for the circumscribed-body search.

    ``delta_sq_lower`` under-estimates the squared minimal slab width of P:
    twice the largest inscribed-ball radius, computed exactly under
    integer-ceiling over-approximations of the facet-normal lengths (so the
    radius is a lower bound on the Euclidean one).  ``rho_sq_upper`` is the
    exact squared circumradius about the origin.  Both only enlarge the
    candidate set relative to the Euclidean bounds ``|a| <= m/delta`` and
    ``|b| <= m*rho/delta + m``.
    """

    delta_sq_lower: Fraction
    rho_sq_upper: Fraction
    norm_bound: int
    offset_bound: int


def _inscribed_radius_lower(P: Polyhedron) -> Fraction:
    # max t with <a_i, x> + s_i t <= b_i for all facets, s_i >= |a_i|:
    # the optimum of this exact program is a valid inscribed-ball radius.
    d = P.dim
    rows = []
    for c in P.constraints:
        s = xl.isqrt_ceil(sum(a * a for a in c.a))
        rows.append((tuple(c.a) + (s,), c.b))
    rows.append((tuple([0] * d + [-1]), 0))
    Q = Polyhedron.from_inequalities(d + 1, rows)
    if Q.is_empty or Q.rays or Q.lines:
        raise AssertionError("slack program of a polytope must be a polytope")
    return max(v[d] for v in Q.vertices)


def enumeration_bounds(P: Polyhedron, m: int) -> EnumerationBounds:
    if not P.is_bounded or P.is_empty:
        raise GeometryError("bounded polytope required")
    if P.affine_dim() != P.dim:
        raise GeometryError("full-dimensional polytope required")
    if any(x.denominator != 1 for v in P.vertices for x in v):
        raise GeometryError("integral polytope required")
    if m < 1:
        raise GeometryError("width must be a positive integer")
    r = _inscribed_radius_lower(P)
    if r <= 0:
        raise AssertionError("full-dimensional polytope with empty interior")
    delta_sq_lower = 4 * r * r
    rho_sq_upper = max(Fraction(sum(x * x for x in v)) for v in P.vertices)
    norm_bound = xl.ceil_fraction(Fraction(m * m) / delta_sq_lower)
    offset_bound = xl.isqrt_ceil(xl.ceil_fraction(m * m * rho_sq_upper / delta_sq_lower)) + m
    return EnumerationBounds(delta_sq_lower, rho_sq_upper, norm_bound, offset_bound)


def integer_hull_equals(P: Polyhedron, L: Polyhedron) -> bool:
    """Exact test of ``conv(L ∩ Z^d) == P`` for bounded L."""
    pts = lattice_points(L)
    if not pts:
        return P.is_empty
    return Polyhedron.from_generators(L.dim, pts) == P
