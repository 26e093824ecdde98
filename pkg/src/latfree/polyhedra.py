"""Exact rational polyhedra: H-rep / V-rep conversion, faces, volume.

A polyhedron is stored in both representations, each canonicalized:

* H-rep: deduplicated constraints ``<a, x> <= b`` with primitive integer
  normals and rational bounds, sorted lexicographically.  Implicit equalities
  show up as a pair of opposite constraints.
* V-rep: vertices (rational points), extreme rays (primitive integer) and a
  lineality basis.  The lineality basis is the Hermite-normal-form lattice
  basis of ``span ∩ Z^d``; vertices and rays are reduced modulo the lineality
  space by orthogonal projection, so equal point sets always canonicalize to
  identical objects.

Conversion both ways runs the double description method on the homogenized
cone with a fixed (lexicographic) insertion order, which keeps every output
deterministic.  The empty polyhedron is a first-class value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import exactla as xl
from ._dd import dual_description

Point = tuple[Fraction, ...]
IntVec = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Constraint:
    """Closed halfspace ``<a, x> <= b`` with primitive integer normal."""

    a: IntVec
    b: Fraction

    def value(self, x: Sequence) -> Fraction:
        return xl.vdot(self.a, x)

    def holds(self, x: Sequence) -> bool:
        return self.value(x) <= self.b

    def holds_strictly(self, x: Sequence) -> bool:
        return self.value(x) < self.b

    def negated(self) -> "Constraint":
        """The reversed closed halfspace ``<a, x> >= b``."""
        return Constraint(xl.vneg(self.a), -self.b)


def make_constraint(a: Sequence, b) -> Constraint:
    """Canonicalize ``<a, x> <= b``: primitive integer normal, rational bound."""
    prim = xl.primitive_vector(a)
    c = xl.vector_content(a)
    return Constraint(prim, Fraction(b) / c)


@dataclass(frozen=True)
class HRep:
    dim: int
    constraints: tuple[Constraint, ...]


@dataclass(frozen=True)
class VRep:
    dim: int
    vertices: tuple[Point, ...]
    rays: tuple[IntVec, ...]
    lines: tuple[IntVec, ...]
    empty: bool = False


@dataclass(frozen=True)
class Edge:
    """A 1-face: bounded segment (two endpoints) or ray (apex + direction)."""

    kind: str  # "segment" | "ray"
    base: Point
    other: Point | None = None
    direction: IntVec | None = None

    def sort_key(self):
        if self.kind == "segment":
            return (0, self.base, self.other)
        return (1, self.base, self.direction)


class GeometryError(ValueError):
    """Geometric precondition violated."""


class UnsupportedGeometryError(GeometryError):
    """Input outside the exactly decidable fragment."""


# ---------------------------------------------------------------------------
# representation conversion
# ---------------------------------------------------------------------------

def _canonical_input_constraints(dim, raw) -> tuple[tuple[Constraint, ...], bool]:
    """Normalize raw (a, b) pairs.  Second value reports plain infeasibility
    from a zero-normal row ``0 <= b`` with ``b < 0``."""
    cons = set()
    for a, b in raw:
        a = tuple(Fraction(x) for x in a)
        if len(a) != dim:
            raise GeometryError("constraint dimension mismatch")
        b = Fraction(b)
        if xl.is_zero_vec(a):
            if b < 0:
                return (), True
            continue
        cons.add(make_constraint(a, b))
    return tuple(sorted(cons)), False


def _homogenized_rows(hrep: HRep) -> list[IntVec]:
    # Cone over P in (t, x) space: t >= 0 first, then <a,x> <= b*t rows in
    # lexicographic constraint order.
    rows = [tuple([-1] + [0] * hrep.dim)]
    for c in hrep.constraints:
        q = c.b.denominator
        rows.append(tuple([-c.b.numerator] + [q * ai for ai in c.a]))
    return rows


def _projector_mod_lines(lines: Sequence[IntVec]):
    """Orthogonal projection onto the complement of span(lines)."""
    if not lines:
        return lambda x: tuple(Fraction(v) for v in x)
    gram = [[Fraction(xl.vdot(a, b)) for b in lines] for a in lines]
    ginv = xl.mat_inv(gram)

    def proj(x):
        coeffs = xl.mat_vec(ginv, [xl.vdot(l, x) for l in lines])
        out = list(Fraction(v) for v in x)
        for c, l in zip(coeffs, lines):
            for i, li in enumerate(l):
                out[i] -= c * li
        return tuple(out)

    return proj


def _canonical_vrep(dim, verts, rays, lines) -> VRep:
    lbasis = xl.lattice_basis_of_span(lines, dim)
    proj = _projector_mod_lines(lbasis)
    vset = {tuple(Fraction(v) for v in proj(p)) for p in verts}
    rset = set()
    for r in rays:
        pr = proj(r)
        if xl.is_zero_vec(pr):
            raise AssertionError("ray inside the lineality space")
        rset.add(xl.primitive_vector(pr))
    return VRep(dim, tuple(sorted(vset)), tuple(sorted(rset)), lbasis)


def h_to_v(hrep: HRep) -> VRep:
    """Exact V-representation; empty input yields the flagged empty VRep."""
    d = hrep.dim
    gens, glines = dual_description(_homogenized_rows(hrep), d + 1)
    verts, rays = [], []
    for g in gens:
        t = g[0]
        if t > 0:
            verts.append(tuple(Fraction(x, t) for x in g[1:]))
        elif t == 0:
            rays.append(g[1:])
        else:
            raise AssertionError("homogenization produced t < 0")
    lines = []
    for l in glines:
        if l[0] != 0:
            raise AssertionError("homogenization produced a non-horizontal line")
        lines.append(l[1:])
    if not verts:
        return VRep(d, (), (), (), empty=True)
    return _canonical_vrep(d, verts, rays, lines)


def _empty_hrep(dim: int) -> HRep:
    a = tuple([1] + [0] * (dim - 1))
    return HRep(dim, (Constraint(a, Fraction(0)),
                      Constraint(xl.vneg(a), Fraction(-1))))


def v_to_h(vrep: VRep) -> HRep:
    """Exact H-representation (canonical infeasible pair for empty input)."""
    d = vrep.dim
    if vrep.empty:
        return _empty_hrep(d)
    if not vrep.vertices:
        raise GeometryError("generator description needs at least one point")
    rows: list[IntVec] = []
    for v in sorted(vrep.vertices):
        h = math.lcm(*[Fraction(x).denominator for x in v]) if v else 1
        rows.append(tuple([-h] + [int(Fraction(x) * h) for x in v]))
    for r in sorted(vrep.rays):
        rows.append(tuple([0] + list(r)))
    for l in sorted(vrep.lines):
        rows.append(tuple([0] + list(l)))
        rows.append(tuple([0] + [-x for x in l]))
    gens, glines = dual_description(rows, d + 1)

    constraints: set[Constraint] = set()
    lbasis = xl.lattice_basis_of_span(glines, d + 1)
    for l in lbasis:
        a = l[1:]
        if not any(a):
            raise AssertionError("contradictory equality for a nonempty polyhedron")
        # line (b, a): <a, x> = b holds on P; emit both inequalities
        b = Fraction(l[0])
        prim = xl.primitive_vector(a)
        c = xl.vector_content(a)
        constraints.add(Constraint(prim, b / c))
        constraints.add(Constraint(xl.vneg(prim), -b / c))
    proj = _projector_mod_lines(lbasis)
    for g in gens:
        pg = proj(g)
        if xl.is_zero_vec(pg):
            raise AssertionError("valid-inequality ray inside its lineality space")
        pg = xl.primitive_vector(pg)
        b, a = Fraction(pg[0]), pg[1:]
        if not any(a):
            if b > 0:
                continue  # the trivial inequality 0 <= b
            raise AssertionError("contradictory valid inequality for a nonempty polyhedron")
        prim = xl.primitive_vector(a)
        c = xl.vector_content(a)
        constraints.add(Constraint(prim, b / c))
    return HRep(d, tuple(sorted(constraints)))


# ---------------------------------------------------------------------------
# polyhedron
# ---------------------------------------------------------------------------

class Polyhedron:
    """Immutable canonical rational polyhedron (possibly empty)."""

    __slots__ = ("dim", "hrep", "vrep")

    def __init__(self, dim: int, hrep: HRep, vrep: VRep):
        # Callers go through the factory classmethods, which canonicalize.
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "hrep", hrep)
        object.__setattr__(self, "vrep", vrep)

    def __setattr__(self, *args):
        raise AttributeError("Polyhedron is immutable")

    def __getstate__(self):
        return (self.dim, self.hrep, self.vrep)

    def __setstate__(self, state):
        for name, value in zip(self.__slots__, state):
            object.__setattr__(self, name, value)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_inequalities(cls, dim: int, constraints: Iterable) -> "Polyhedron":
        """Polyhedron ``{x : <a, x> <= b}`` from raw (a, b) pairs."""
        if dim < 1:
            raise GeometryError("dimension must be >= 1")
        cons, infeasible = _canonical_input_constraints(dim, constraints)
        if infeasible:
            return cls.empty(dim)
        v = h_to_v(HRep(dim, cons))
        if v.empty:
            return cls.empty(dim)
        h = v_to_h(v)
        return cls(dim, h, v)

    @classmethod
    def from_generators(cls, dim: int, vertices: Iterable, rays: Iterable = (),
                        lines: Iterable = ()) -> "Polyhedron":
        """conv(vertices) + cone(rays) + span(lines)."""
        if dim < 1:
            raise GeometryError("dimension must be >= 1")
        verts = [tuple(Fraction(x) for x in p) for p in vertices]
        rs = [xl.primitive_vector(r) for r in rays]
        ls = [xl.primitive_vector(l) for l in lines]
        if not verts:
            if rs or ls:
                raise GeometryError("generator description needs at least one point")
            return cls.empty(dim)
        if any(len(p) != dim for p in verts) or any(len(r) != dim for r in rs + ls):
            raise GeometryError("generator dimension mismatch")
        raw = VRep(dim, tuple(verts), tuple(rs), tuple(ls))
        h = v_to_h(raw)
        v = h_to_v(h)
        if v.empty:
            raise AssertionError("generated polyhedron cannot be empty")
        return cls(dim, h, v)

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        return cls(dim, _empty_hrep(dim), VRep(dim, (), (), (), empty=True))

    # -- basic queries -------------------------------------------------------

    @property
    def constraints(self) -> tuple[Constraint, ...]:
        return self.hrep.constraints

    @property
    def vertices(self) -> tuple[Point, ...]:
        return self.vrep.vertices

    @property
    def rays(self) -> tuple[IntVec, ...]:
        return self.vrep.rays

    @property
    def lines(self) -> tuple[IntVec, ...]:
        return self.vrep.lines

    @property
    def is_empty(self) -> bool:
        return self.vrep.empty

    @property
    def is_bounded(self) -> bool:
        return self.is_empty or (not self.rays and not self.lines)

    def affine_dim(self) -> int:
        """Dimension of the affine hull (-1 for the empty polyhedron)."""
        if self.is_empty:
            return -1
        if not self.vertices:
            raise AssertionError("nonempty polyhedron without anchor points")
        v0 = self.vertices[0]
        dirs = [xl.vsub(v, v0) for v in self.vertices[1:]]
        dirs += [tuple(Fraction(x) for x in r) for r in self.rays]
        dirs += [tuple(Fraction(x) for x in l) for l in self.lines]
        if not dirs:
            return 0
        return xl.mat_rank(dirs)

    def is_full_dim(self) -> bool:
        return self.affine_dim() == self.dim

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return (self.dim == other.dim and self.is_empty == other.is_empty
                and self.hrep.constraints == other.hrep.constraints)

    def __hash__(self):
        return hash((self.dim, self.is_empty, self.hrep.constraints))

    def __repr__(self):
        if self.is_empty:
            return f"Polyhedron(empty, dim={self.dim})"
        return (f"Polyhedron(dim={self.dim}, {len(self.constraints)} constraints, "
                f"{len(self.vertices)} vertices, {len(self.rays)} rays, "
                f"{len(self.lines)} lines)")

    # -- point and set queries ------------------------------------------------

    def point_location(self, x: Sequence) -> str:
        """'interior', 'boundary' or 'outside' (interior is ambient)."""
        if len(x) != self.dim:
            raise GeometryError("point dimension mismatch")
        if self.is_empty:
            return "outside"
        x = tuple(Fraction(v) for v in x)
        tight = False
        for c in self.constraints:
            val = c.value(x)
            if val > c.b:
                return "outside"
            if val == c.b:
                tight = True
        return "boundary" if tight else "interior"

    def contains_point(self, x: Sequence) -> bool:
        return self.point_location(x) != "outside"

    def contains(self, other: "Polyhedron") -> bool:
        """Exact decision of ``other ⊆ self``."""
        if self.dim != other.dim:
            raise GeometryError("ambient dimension mismatch")
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        for c in self.constraints:
            if any(c.value(v) > c.b for v in other.vertices):
                return False
            if any(xl.vdot(c.a, r) > 0 for r in other.rays):
                return False
            if any(xl.vdot(c.a, l) != 0 for l in other.lines):
                return False
        return True

    def support_value(self, a: Sequence) -> Fraction | None:
        """max over the polyhedron of <a, x>; None means unbounded above."""
        if self.is_empty:
            raise GeometryError("empty polyhedron")
        if any(xl.vdot(a, r) > 0 for r in self.rays):
            return None
        if any(xl.vdot(a, l) != 0 for l in self.lines):
            return None
        return max(xl.vdot(a, v) for v in self.vertices)

    # -- derived polyhedra -----------------------------------------------------

    def intersect_halfspaces(self, extra: Iterable) -> "Polyhedron":
        """Intersection with additional raw (a, b) constraints."""
        if self.is_empty:
            return self
        raw = [(c.a, c.b) for c in self.constraints]
        raw += [(tuple(a), Fraction(b)) for a, b in extra]
        return Polyhedron.from_inequalities(self.dim, raw)

    def intersection(self, other: "Polyhedron") -> "Polyhedron":
        if self.dim != other.dim:
            raise GeometryError("ambient dimension mismatch")
        if self.is_empty:
            return self
        if other.is_empty:
            return other
        return self.intersect_halfspaces((c.a, c.b) for c in other.constraints)

    def translate(self, t: Sequence) -> "Polyhedron":
        if self.is_empty:
            return self
        t = tuple(Fraction(v) for v in t)
        return Polyhedron.from_generators(
            self.dim,
            [xl.vadd(v, t) for v in self.vertices],
            self.rays,
            self.lines,
        )

    def affine_image(self, U: Sequence[Sequence[int]], t: Sequence | None = None) -> "Polyhedron":
        """Image under x -> U x + t for nonsingular integer U."""
        if self.is_empty:
            return self
        t = tuple(Fraction(v) for v in t) if t is not None else (Fraction(0),) * self.dim
        verts = [xl.vadd(xl.mat_vec(U, v), t) for v in self.vertices]
        rays = [xl.mat_vec(U, r) for r in self.rays]
        lines = [xl.mat_vec(U, l) for l in self.lines]
        return Polyhedron.from_generators(self.dim, verts, rays, lines)

    def affine_preimage(self, A: Sequence[Sequence[int]], t: Sequence | None = None) -> "Polyhedron":
        """The set ``{x : A x + t ∈ P}`` for an integer matrix A."""
        t = tuple(Fraction(v) for v in t) if t is not None else (Fraction(0),) * self.dim
        if self.is_empty:
            return self
        At = xl.mat_transpose(A)
        raw = []
        for c in self.constraints:
            raw.append((xl.mat_vec(At, c.a), c.b - xl.vdot(c.a, t)))
        return Polyhedron.from_inequalities(self.dim, raw)

    def recession(self) -> "Polyhedron":
        """Recession cone as a polyhedron anchored at the origin."""
        if self.is_empty:
            raise GeometryError("empty polyhedron")
        origin = (Fraction(0),) * self.dim
        return Polyhedron.from_generators(self.dim, [origin], self.rays, self.lines)

    def lineality_space(self) -> tuple[IntVec, ...]:
        """Canonical lattice basis of the lineality space intersected with Z^d."""
        if self.is_empty:
            raise GeometryError("empty polyhedron")
        return self.lines

    def recession_is_linear(self) -> bool:
        """True iff the recession cone is a linear subspace (maybe {0})."""
        if self.is_empty:
            raise GeometryError("empty polyhedron")
        return not self.rays

    # -- faces ------------------------------------------------------------------

    def edges(self) -> tuple[Edge, ...]:
        """All 1-faces, in a fixed canonical order (line-free input only)."""
        if self.is_empty:
            return ()
        if self.lines:
            raise GeometryError("lineality present; reduce first")
        if self.affine_dim() < 1:
            return ()
        cons = self.constraints
        d = self.dim
        verts = self.vertices
        tight = [frozenset(i for i, c in enumerate(cons) if c.value(v) == c.b)
                 for v in verts]
        perp = [frozenset(i for i, c in enumerate(cons) if xl.vdot(c.a, r) == 0)
                for r in self.rays]
        out = []
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                common = tight[i] & tight[j]
                if len(common) < d - 1:
                    continue
                if xl.mat_rank([cons[k].a for k in common]) == d - 1:
                    p, q = sorted((verts[i], verts[j]))
                    out.append(Edge("segment", p, other=q))
            for j, r in enumerate(self.rays):
                common = tight[i] & perp[j]
                if len(common) < d - 1:
                    continue
                if xl.mat_rank([cons[k].a for k in common]) == d - 1:
                    out.append(Edge("ray", verts[i], direction=r))
        return tuple(sorted(out, key=Edge.sort_key))

    # -- volume -------------------------------------------------------------------

    def _facet_vertex_sets(self):
        for c in self.constraints:
            yield c, tuple(v for v in self.vertices if c.value(v) == c.b)

    def _simplices(self, verts: Sequence[Point], k: int) -> list[tuple[Point, ...]]:
        if k == 0:
            return [(verts[0],)]
        if k == 1:
            lo, hi = min(verts), max(verts)
            return [(lo, hi)]
        sub = Polyhedron.from_generators(self.dim, verts)
        v0 = min(sub.vertices)
        out = []
        for c in sub.constraints:
            if c.value(v0) == c.b:
                continue
            fverts = [v for v in sub.vertices if c.value(v) == c.b]
            for s in sub._simplices(fverts, k - 1):
                out.append((v0,) + s)
        return out

    def volume(self) -> Fraction:
        """Exact ambient-dimensional volume of a polytope (0 if lower-dim)."""
        if self.is_empty:
            return Fraction(0)
        if self.rays or self.lines:
            raise GeometryError("unbounded")
        d = self.dim
        if self.affine_dim() < d:
            return Fraction(0)
        total = Fraction(0)
        fact = math.factorial(d)
        v0 = min(self.vertices)
        for c in self.constraints:
            if c.value(v0) == c.b:
                continue
            fverts = [v for v in self.vertices if c.value(v) == c.b]
            for s in self._simplices(fverts, d - 1):
                det = xl.mat_det([xl.vsub(p, v0) for p in s])
                total += abs(det) / fact
        return total


def recession_cone(P: Polyhedron) -> Polyhedron:
    return P.recession()


def lineality_space(P: Polyhedron) -> tuple[IntVec, ...]:
    return P.lineality_space()


def contains(P: Polyhedron, Q: Polyhedron) -> bool:
    """True iff Q ⊆ P."""
    return P.contains(Q)


def point_in(P: Polyhedron, x: Sequence) -> str:
    return P.point_location(x)


def edges(P: Polyhedron) -> tuple[Edge, ...]:
    return P.edges()


def volume(P: Polyhedron) -> Fraction:
    return P.volume()
