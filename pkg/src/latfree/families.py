"""Constructors and generators for standard lattice-free cut families.

Split sets with bounded normals, shifted cross-polytopes circumscribing the
0/1 cube, a family of thin maximal lattice-free bodies whose integer points
span only a hyperplane (pairwise inequivalent under unimodular maps while
their max-facet-width stays bounded), and the exhaustive enumeration of
maximal lattice-free polytopes circumscribing a given integral polytope at a
prescribed max-facet-width.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import exactla as xl
from .lattice import (
    enumeration_bounds,
    integer_hull_equals,
    is_maximal_lattice_free,
    lattice_points,
    max_facet_width,
)
from .polyhedra import GeometryError, Polyhedron


# ---------------------------------------------------------------------------
# split sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SplitSpec:
    """Split set ``{x : i-1 <= <a, x> <= i}`` with canonical-sign primitive a.

    (a, i) and (-a, 1-i) describe the same body; requiring the first nonzero
    entry of a to be positive removes the aliasing.
    """

    a: tuple[int, ...]
    i: int

    def body(self) -> Polyhedron:
        return Polyhedron.from_inequalities(
            len(self.a), [(self.a, self.i), (xl.vneg(self.a), -(self.i - 1))])


def primitive_directions(d: int, max_norm: int) -> list[tuple[int, ...]]:
    """Canonical-sign primitive integer vectors with max-norm at most max_norm."""
    out = []
    for a in itertools.product(range(-max_norm, max_norm + 1), repeat=d):
        if not any(a):
            continue
        if not xl.lex_positive(a):
            continue
        prim, scale = xl.gcd_normalize(a)
        if scale != 1:
            continue
        out.append(a)
    return sorted(out)


def split_specs(d: int, max_norm: int, offsets) -> list[SplitSpec]:
    if max_norm < 1:
        raise GeometryError("max_norm must be >= 1")
    offs = sorted(set(int(i) for i in offsets))
    return [SplitSpec(a, i) for a in primitive_directions(d, max_norm) for i in offs]


def splits(d: int, max_norm: int, offsets) -> list[Polyhedron]:
    """All split sets with the given normal bound and offsets, no duplicates."""
    return [s.body() for s in split_specs(d, max_norm, offsets)]


# ---------------------------------------------------------------------------
# sign classes and the bodies built from them
# ---------------------------------------------------------------------------

def sign_class(d: int, parity: str) -> tuple[tuple[int, ...], ...]:
    """All vectors in {-1, 1}^d with an even (resp. odd) number of -1 entries."""
    if parity not in ("even", "odd"):
        raise GeometryError("parity must be 'even' or 'odd'")
    want = 0 if parity == "even" else 1
    return tuple(a for a in itertools.product((-1, 1), repeat=d)
                 if sum(1 for x in a if x == -1) % 2 == want)


def cross_polytope(d: int, validate: bool = True) -> Polyhedron:
    """The body ``{x : |2 x_1 - 1| + ... + |2 x_d - 1| <= d}``.

    A maximal lattice-free cross-polytope centered at (1/2, ..., 1/2) whose
    integer points are exactly {0, 1}^d.
    """
    if d < 1:
        raise GeometryError("dimension must be >= 1")
    raw = []
    for a in itertools.product((-1, 1), repeat=d):
        raw.append((tuple(2 * x for x in a), d + sum(a)))
    body = Polyhedron.from_inequalities(d, raw)
    if validate and not is_maximal_lattice_free(body):
        raise AssertionError("cross-polytope failed the maximality self-test")
    return body


def sign_class_polytope(d: int, parity: str = "even", level: int | None = None) -> Polyhedron:
    """The polytope ``{x : <a, x> <= level}`` over one sign class (level d
    by default)."""
    if level is None:
        level = d
    return Polyhedron.from_inequalities(d, [(a, level) for a in sign_class(d, parity)])


def flat_family_member(d: int, k: int, validate: bool = True) -> Polyhedron:
    """Thin maximal lattice-free body number k in dimension d (k >= 2d).

    The body is the preimage of the even-sign-class polytope at level d-1
    under ``x -> (2 x_1 - 1, ..., 2 x_{d-1} - 1, k x_d)``.  Level d-1 makes
    the section by the horizontal hyperplane exactly the cross-polytope
    circumscribing {0, 1}^(d-1): a sign-class value at a 0/1 point is a sum
    of d-1 odd terms, so it is tight at level d-1 and can never reach level
    d, which would strand all integer points in the interior.

    Integer points are exactly {0, 1}^(d-1) x {0}, so their hull is only
    (d-1)-dimensional; the volume scales like 1/k, which makes distinct k
    inequivalent under unimodular maps plus integer shifts, while the
    max-facet-width stays below d * 2^(d-1).
    """
    if d < 3:
        raise GeometryError("dimension must be >= 3")
    if k < 2 * d:
        raise GeometryError("thinness bound violated: k must be >= 2*d")
    P = sign_class_polytope(d, "even", level=d - 1)
    A = [[0] * d for _ in range(d)]
    for j in range(d - 1):
        A[j][j] = 2
    A[d - 1][d - 1] = k
    t = tuple([-1] * (d - 1) + [0])
    body = P.affine_preimage(A, t)
    if validate:
        if any(abs(x) > d for v in P.vertices for x in v):
            raise AssertionError("base polytope escapes the [-d, d] box")
        if max_facet_width(P) > d * 2 ** (d - 1):
            raise AssertionError("base polytope width bound failed")
        if body.volume() * k * 2 ** (d - 1) != P.volume():
            raise AssertionError("volume scaling self-test failed")
        expected = sorted(tuple(z) + (0,)
                          for z in itertools.product((0, 1), repeat=d - 1))
        if lattice_points(body) != expected:
            raise AssertionError("integer point self-test failed")
        if max_facet_width(body) > d * 2 ** (d - 1):
            raise AssertionError("width bound self-test failed")
        if not is_maximal_lattice_free(body):
            raise AssertionError("maximality self-test failed")
    return body


def flat_family(d: int, ks) -> list[Polyhedron]:
    return [flat_family_member(d, k) for k in ks]


# ---------------------------------------------------------------------------
# circumscribed maximal bodies at fixed width
# ---------------------------------------------------------------------------

def enumerate_circumscribed(P: Polyhedron, m: int, max_directions: int = 20,
                            node_budget: int = 500_000) -> list[Polyhedron]:
    """All maximal lattice-free polytopes L with integer hull P and width m.

    Every facet of such an L supports P at one of P's integer points, so its
    offset is forced to the support value of P; candidate facet normals are
    the primitive vectors inside the rational search bound.  The search runs
    a monotone DFS over candidate subsets, skipping constraints that are
    redundant for the current body (any superset reaches the same body
    without them) and memoizing (body, remaining candidates) states.
    """
    if not P.is_bounded or P.is_empty:
        raise GeometryError("bounded polytope required")
    if P.affine_dim() != P.dim:
        raise GeometryError("full-dimensional polytope required")
    d = P.dim
    eb = enumeration_bounds(P, m)
    dirs = []
    limit = xl.isqrt_ceil(eb.norm_bound)
    for a in itertools.product(range(-limit, limit + 1), repeat=d):
        if not any(a):
            continue
        if sum(x * x for x in a) > eb.norm_bound:
            continue
        prim, scale = xl.gcd_normalize(a)
        if scale != 1:
            continue
        dirs.append(a)
    dirs.sort()
    if len(dirs) > max_directions:
        raise GeometryError(
            f"candidate direction set too large ({len(dirs)} > {max_directions}); "
            "the search is meant for desk-scale instances")
    halfspaces = []
    for a in dirs:
        h = P.support_value(a)
        if h.denominator != 1:
            raise AssertionError("integral polytope with fractional support value")
        halfspaces.append((a, h))

    found: set[Polyhedron] = set()
    seen: set = set()
    nodes = 0

    def consider(body: Polyhedron):
        if body.rays or body.lines:
            return
        if body in found:
            return
        if body.affine_dim() != d:
            return
        if max_facet_width(body) != m:
            return
        if not integer_hull_equals(P, body):
            return
        try:
            if not is_maximal_lattice_free(body):
                return
        except GeometryError:
            return  # not lattice-free
        found.add(body)

    def recurse(body: Polyhedron, start: int):
        nonlocal nodes
        for j in range(start, len(halfspaces)):
            nodes += 1
            if nodes > node_budget:
                raise GeometryError("circumscribed-body search exceeded its node budget")
            nb = body.intersect_halfspaces([halfspaces[j]])
            if nb.is_empty:
                continue
            if nb == body:
                continue  # redundant now, hence redundant for every superset
            key = (nb, j + 1)
            if key in seen:
                continue
            seen.add(key)
            consider(nb)
            recurse(nb, j + 1)

    whole = Polyhedron.from_inequalities(d, [])
    recurse(whole, 0)
    return sorted(found, key=lambda b: tuple((c.a, c.b) for c in b.constraints))
