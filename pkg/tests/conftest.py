"""Shared random-instance generators (deterministically seeded per test)."""

import random
from fractions import Fraction

import pytest

from latfree import exactla as xl
from latfree.families import primitive_directions
from latfree.polyhedra import Polyhedron


def rand_fraction(rng, span=3, max_den=3):
    den = rng.randint(1, max_den)
    return Fraction(rng.randint(-span * den, span * den), den)


def random_polytope(rng, d, npts=None, span=3, max_den=3):
    """Full-dimensional random polytope from a small rational point cloud."""
    npts = npts or (d + 2 + rng.randint(0, 3))
    while True:
        pts = [tuple(rand_fraction(rng, span, max_den) for _ in range(d))
               for _ in range(npts)]
        P = Polyhedron.from_generators(d, pts)
        if P.affine_dim() == d:
            return P


def random_unimodular(rng, d, steps=6):
    U = [list(row) for row in xl.mat_identity(d)]
    for _ in range(steps):
        i, j = rng.randrange(d), rng.randrange(d)
        if i == j:
            continue
        c = rng.choice((-2, -1, 1, 2))
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    if rng.random() < 0.5:
        rng.shuffle(U)
    return tuple(tuple(row) for row in U)


def split_body(d, a, i):
    return Polyhedron.from_inequalities(d, [(a, i), (xl.vneg(a), -(i - 1))])


def random_cutting_split(rng, P, max_norm=1, tries=200):
    """A split whose interior meets P (None if none found)."""
    dirs = primitive_directions(P.dim, max_norm)
    for _ in range(tries):
        a = rng.choice(dirs)
        hi = P.support_value(a)
        neg = P.support_value(xl.vneg(a))
        if hi is None or neg is None:
            continue
        lo_i, hi_i = xl.floor_fraction(-neg), xl.ceil_fraction(hi)
        i = rng.randint(lo_i, hi_i + 1)
        L = split_body(P.dim, a, i)
        if any(all(c.holds_strictly(v) for c in L.constraints) for v in P.vertices):
            return L
    return None


def relevant_splits(P, max_norm):
    """All splits with bounded normals whose offsets cover P's range (+/- 1)."""
    out = []
    for a in primitive_directions(P.dim, max_norm):
        hi = P.support_value(a)
        neg = P.support_value(xl.vneg(a))
        if hi is None or neg is None:
            continue
        for i in range(xl.floor_fraction(-neg) - 1, xl.ceil_fraction(hi) + 2):
            out.append(split_body(P.dim, a, i))
    return out


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
