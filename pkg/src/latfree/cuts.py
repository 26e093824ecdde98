"""Interior-removal cuts and closures.

The central operator maps a polyhedron P and a full-dimensional body L to
``conv(P \\ int(L))``.  For line-free P it is computed from the edges of P:
every edge is preserved, removed, or bisected by int(L); crossing points of
bisected edges plus the surviving endpoints generate the result together
with the recession cone.  Polyhedra with lineality are split off through a
unimodular change of coordinates and the line-free factor is processed.

Bisected edges carry exact crossing scalars.  Scaled to the common
denominator of P's vertices and the body's max-facet-width, their
reciprocals are natural numbers, which makes families of bodies comparable
in the componentwise order of N^s; the classical Gordan-Dickson lemma then
yields finite dominating subfamilies, computed here as an antichain filter.
"""

from __future__ import annotations

import math
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactla as xl
from ._dd import dual_description
from .lattice import INFINITE_WIDTH, lineality_reduction, max_facet_width
from .polyhedra import Constraint, Edge, GeometryError, Polyhedron


@dataclass(frozen=True)
class BisectedEdge:
    """Edge with exactly one endpoint (or its apex) inside int(L)."""

    edge: Edge
    interior_end: str            # "base" | "other" | "apex"
    p: tuple                     # the interior endpoint
    u: tuple[int, ...]           # integral direction; e ⊆ conv{p, p+u} for segments
    crossing_scalar: Fraction    # λ > 0 with p + λu on bd(L)
    crossing_point: tuple


@dataclass(frozen=True)
class EdgeClassification:
    edges: tuple[Edge, ...]
    preserved: tuple[int, ...]
    removed: tuple[int, ...]
    bisected_indices: tuple[int, ...]
    bisected: tuple[BisectedEdge, ...]

    @property
    def signature(self) -> tuple:
        """Partition tag per edge, including which end is interior."""
        tags: list = ["P"] * len(self.edges)
        for i in self.removed:
            tags[i] = "R"
        for idx, be in zip(self.bisected_indices, self.bisected):
            tags[idx] = ("B", be.interior_end)
        return tuple(tags)


@dataclass(frozen=True)
class DominanceVector:
    """(h*m)! times the reciprocals of the crossing scalars, in edge order."""

    scale: int
    entries: tuple[int, ...]


@dataclass(frozen=True)
class CutHalfspace:
    """Halfspace containing P \\ int(L); flagged when it certifies emptiness."""

    constraint: Constraint
    infeasible: bool = False


def _require_full_dim_body(L: Polyhedron):
    if L.is_empty or L.affine_dim() != L.dim:
        raise GeometryError("full-dimensional body required")


def _strictly_inside(x, L: Polyhedron) -> bool:
    return all(c.holds_strictly(x) for c in L.constraints)


def _exit_scalar(p, u, L: Polyhedron) -> Fraction | None:
    """min over constraints with <a,u> > 0 of (b - <a,p>)/<a,u>."""
    best = None
    for c in L.constraints:
        du = xl.vdot(c.a, u)
        if du > 0:
            lam = (c.b - c.value(p)) / du
            if best is None or lam < best:
                best = lam
    return best


def _dips_unboundedly(p, u, L: Polyhedron) -> bool:
    """True iff {λ >= 0 : p + λu strictly inside L} is nonempty and unbounded."""
    lo = Fraction(0)
    hi = None
    for c in L.constraints:
        du = xl.vdot(c.a, u)
        v0 = c.value(p)
        if du == 0:
            if v0 >= c.b:
                return False
        elif du > 0:
            bound = (c.b - v0) / du
            if hi is None or bound < hi:
                hi = bound
        else:
            bound = (c.b - v0) / du
            if bound > lo:
                lo = bound
    if hi is not None:
        return False
    return True  # no upper bound; interval (lo, ∞) is nonempty


def _integral_edge_direction(w) -> tuple[int, ...]:
    # Smallest integral multiple of w: primitive direction times ceil(content).
    prim = xl.primitive_vector(w)
    c = xl.vector_content(w)
    return tuple(xl.ceil_fraction(c) * a for a in prim)


def classify_edges(P: Polyhedron, L: Polyhedron) -> EdgeClassification:
    """Partition the edges of line-free P by the action of int(L)."""
    if P.dim != L.dim:
        raise GeometryError("ambient dimension mismatch")
    _require_full_dim_body(L)
    if P.is_empty:
        raise GeometryError("empty polyhedron has no edges to classify")
    if P.lines:
        raise GeometryError("lineality present; reduce first")
    edges = P.edges()
    preserved, removed, bis_idx, bis = [], [], [], []
    for i, e in enumerate(edges):
        if e.kind == "segment":
            in_base = _strictly_inside(e.base, L)
            in_other = _strictly_inside(e.other, L)
            if in_base and in_other:
                removed.append(i)
            elif in_base or in_other:
                p, far = (e.base, e.other) if in_base else (e.other, e.base)
                u = _integral_edge_direction(xl.vsub(far, p))
                lam = _exit_scalar(p, u, L)
                if lam is None or lam <= 0:
                    raise AssertionError("bisected segment without a boundary crossing")
                q = xl.vadd(p, xl.vscale(lam, u))
                bis_idx.append(i)
                bis.append(BisectedEdge(e, "base" if in_base else "other", p, u, lam, q))
            else:
                preserved.append(i)
        else:
            u = e.direction
            if _strictly_inside(e.base, L):
                lam = _exit_scalar(e.base, u, L)
                if lam is None:
                    removed.append(i)  # the whole ray sits inside int(L)
                else:
                    q = xl.vadd(e.base, xl.vscale(lam, u))
                    bis_idx.append(i)
                    bis.append(BisectedEdge(e, "apex", e.base, u, lam, q))
            else:
                if _dips_unboundedly(e.base, u, L):
                    raise GeometryError(
                        "edge enters the interior without leaving it; "
                        "recession cone of the body is not a linear space")
                preserved.append(i)
    return EdgeClassification(edges, tuple(preserved), tuple(removed),
                              tuple(bis_idx), tuple(bis))


# ---------------------------------------------------------------------------
# the interior-removal operator
# ---------------------------------------------------------------------------

def _subset_of_interior(P: Polyhedron, L: Polyhedron) -> bool:
    for c in L.constraints:
        if any(not c.holds_strictly(v) for v in P.vertices):
            return False
        if any(xl.vdot(c.a, r) > 0 for r in P.rays):
            return False
        if any(xl.vdot(c.a, l) != 0 for l in P.lines):
            return False
    return True


def _recession_cones_overlap(P: Polyhedron, L: Polyhedron) -> bool:
    rows = [c.a for c in P.constraints] + [c.a for c in L.constraints]
    rays, lines = dual_description(rows, P.dim)
    return bool(rays or lines)


def remove_interior(P: Polyhedron, L: Polyhedron) -> Polyhedron:
    """conv(P \\ int(L)) as a canonical polyhedron.

    Exact whenever the recession cone of L is a linear space (the edge
    construction applies, after reducing any lineality of P).  When it is
    not: P inside int(L) yields the empty polyhedron; disjoint recession
    cones still admit the edge construction; otherwise the result may fail
    to be closed and P is returned unchanged with a warning.
    """
    if P.dim != L.dim:
        raise GeometryError("ambient dimension mismatch")
    _require_full_dim_body(L)
    if P.is_empty:
        return P
    if not L.constraints:
        return Polyhedron.empty(P.dim)  # int(L) is the whole space
    d = P.dim

    if P.lines:
        if any(xl.vdot(c.a, l) != 0 for c in L.constraints for l in P.lines):
            # Some line of P escapes rec(L): every point survives the hull.
            return P
        red = lineality_reduction(P)
        k = red.k
        factor_cons = []
        for c in L.constraints:
            a_y = xl.mat_vec(red.basis, c.a)
            if any(a_y[:k]):
                raise AssertionError("body constraint not orthogonal to the shared lineality")
            factor_cons.append((a_y[k:], c.b))
        L_factor = Polyhedron.from_inequalities(d - k, factor_cons)
        R_factor = remove_interior(red.factor, L_factor)
        if R_factor.is_empty:
            return Polyhedron.empty(d)
        return Polyhedron.from_inequalities(d, red.lift_constraints(R_factor.constraints))

    if P.affine_dim() == 0:
        return Polyhedron.empty(d) if _strictly_inside(P.vertices[0], L) else P

    if L.rays:  # recession cone of L is not a linear space
        if _subset_of_interior(P, L):
            return Polyhedron.empty(d)
        if _recession_cones_overlap(P, L):
            warnings.warn("recession cone of the body meets the recession cone of P; "
                          "returning P unchanged (hull may not be closed)")
            return P

    cls = classify_edges(P, L)
    pts: list = []
    for i in cls.preserved:
        e = cls.edges[i]
        pts.append(e.base)
        if e.kind == "segment":
            pts.append(e.other)
    for be in cls.bisected:
        pts.append(be.crossing_point)
        if be.edge.kind == "segment":
            far = be.edge.other if be.interior_end == "base" else be.edge.base
            pts.append(far)
    if not pts:
        return Polyhedron.empty(d)
    return Polyhedron.from_generators(d, pts, rays=P.rays)


def l_cuts(P: Polyhedron, L: Polyhedron) -> list[CutHalfspace]:
    """Facet halfspaces of conv(P \\ int L) that cut off part of P."""
    return cuts_from_result(P, remove_interior(P, L))


def cuts_from_result(P: Polyhedron, R: Polyhedron) -> list[CutHalfspace]:
    if R == P:
        return []
    if R.is_empty:
        if not P.constraints:
            raise GeometryError("cannot certify emptiness against the whole space")
        c = P.constraints[0]
        return [CutHalfspace(Constraint(xl.vneg(c.a), -c.b - 1), infeasible=True)]
    out = []
    for c in R.constraints:
        sup = P.support_value(c.a)
        if sup is None or sup > c.b:
            out.append(CutHalfspace(c))
    return out


# ---------------------------------------------------------------------------
# dominance
# ---------------------------------------------------------------------------

def dominance_vector(P: Polyhedron, L: Polyhedron, signature) -> DominanceVector:
    """Gordan-Dickson key of L relative to P at a fixed edge partition."""
    cls = classify_edges(P, L)
    if cls.signature != tuple(signature):
        raise GeometryError("incomparable partition")
    m = max_facet_width(L)
    if m == INFINITE_WIDTH:
        raise GeometryError("infinite max-facet-width")
    h = 1
    for v in P.vertices:
        for x in v:
            h = math.lcm(h, x.denominator)
    scale = math.factorial(h * m)
    entries = []
    for be in cls.bisected:
        e = Fraction(scale) / be.crossing_scalar
        if e.denominator != 1 or e <= 0:
            raise AssertionError("crossing scalar violates the integrality guarantee")
        entries.append(int(e))
    return DominanceVector(scale, tuple(entries))


class _BodyAnalysis:
    __slots__ = ("signature", "lams", "result")

    def __init__(self, P, L):
        self.signature = None
        self.lams = None
        if not P.lines and not L.rays and not P.is_empty and P.affine_dim() >= 1:
            cls = classify_edges(P, L)
            self.signature = cls.signature
            self.lams = tuple(be.crossing_scalar for be in cls.bisected)
        self.result = remove_interior(P, L)


def _dominates(info_a: _BodyAnalysis, info_b: _BodyAnalysis) -> bool:
    if info_a.signature is not None and info_a.signature == info_b.signature:
        return all(la >= lb for la, lb in zip(info_a.lams, info_b.lams))
    return info_b.result.contains(info_a.result)


def dominates(P: Polyhedron, L_prime: Polyhedron, L: Polyhedron) -> bool:
    """Exact decision of conv(P \\ int L') ⊆ conv(P \\ int L).

    Fast path compares crossing scalars componentwise when both bodies cut
    the same edge partition of P; otherwise exact polyhedron inclusion.
    """
    return _dominates(_BodyAnalysis(P, L_prime), _BodyAnalysis(P, L))


def minimal_dominating_subfamily(P: Polyhedron, family: Sequence[Polyhedron]) -> list[Polyhedron]:
    """Antichain of members whose cuts dominate the whole family.

    Every member of the input is dominated by some retained member, no
    retained member dominates another, and ties keep the first occurrence.
    """
    members = list(family)
    infos = [_BodyAnalysis(P, L) for L in members]
    kept: list[int] = []
    for i, info in enumerate(infos):
        if any(_dominates(infos[k], info) for k in kept):
            continue
        kept = [k for k in kept if not _dominates(info, infos[k])]
        kept.append(i)
    return [members[i] for i in kept]


# ---------------------------------------------------------------------------
# closures
# ---------------------------------------------------------------------------

def _remove_interior_task(args):
    P, L = args
    return remove_interior(P, L)


def closure(P: Polyhedron, family: Sequence[Polyhedron], return_cuts: bool = False,
            workers: int | None = None):
    """Exact intersection of conv(P \\ int L) over the family.

    The empty family yields P.  With ``return_cuts`` the second value lists
    ``(member_index, CutHalfspace)`` pairs certifying the intersection.
    Worker count (default ``LATFREE_WORKERS`` or 1) only affects speed;
    results are byte-identical.
    """
    members = list(family)
    for L in members:
        if L.dim != P.dim:
            raise GeometryError("ambient dimension mismatch")
    if workers is None:
        workers = int(os.environ.get("LATFREE_WORKERS", "1") or "1")
    if not members:
        return (P, []) if return_cuts else P
    if workers > 1 and len(members) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_remove_interior_task, [(P, L) for L in members]))
    else:
        results = [remove_interior(P, L) for L in members]
    cuts = []
    if return_cuts:
        for i, R in enumerate(results):
            for cut in cuts_from_result(P, R):
                cuts.append((i, cut))
    if any(R.is_empty for R in results):
        out = Polyhedron.empty(P.dim)
    else:
        raw = [(c.a, c.b) for R in results for c in R.constraints]
        out = Polyhedron.from_inequalities(P.dim, raw)
    return (out, cuts) if return_cuts else out
