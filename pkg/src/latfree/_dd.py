"""Double description method for rational polyhedral cones.

Computes the extreme rays and the lineality space of a homogeneous cone
``{y : <m_i, y> <= 0}`` by inserting the rows one at a time, starting from
the full space.  All arithmetic is integer (every generator is rescaled to a
primitive integer vector after each step), so the result is exact.

Adjacency of rays is decided with the combinatorial zero-set test: two rays
are adjacent iff no third ray is tight on every row on which both of them are
tight.  Zero sets are recomputed from the row list whenever a ray is created,
so they are exact even when a generated ray is accidentally tight on extra
rows.
"""

from __future__ import annotations

import math
from typing import Sequence

IntVec = tuple[int, ...]


def _scale_primitive(v: Sequence[int]) -> IntVec:
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g == 0:
        raise ValueError("zero generator")
    return tuple(a // g for a in v)


def _dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def _zero_set(v: Sequence[int], rows: list[IntVec]) -> int:
    zs = 0
    for i, m in enumerate(rows):
        if _dot(m, v) == 0:
            zs |= 1 << i
    return zs


def dual_description_with_zero_sets(
    rows: Sequence[Sequence[int]], dim: int
) -> tuple[list[tuple[IntVec, int]], list[IntVec]]:
    """Extreme rays (with tight-row bitmasks) and lineality basis of the cone
    ``{y in R^dim : <row, y> <= 0 for every row}``.

    Rows must be integer vectors.  Rays are extreme modulo the lineality
    space; all generators are primitive integer vectors.  Output is
    deterministic for a fixed row order.
    """
    lines: list[IntVec] = [tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[IntVec, int]] = []
    inserted: list[IntVec] = []

    for m in rows:
        m = tuple(int(a) for a in m)
        bit = 1 << len(inserted)
        line_dots = [_dot(m, l) for l in lines]
        pivot = next((i for i, d in enumerate(line_dots) if d != 0), None)

        if pivot is not None:
            # The constraint cuts the lineality space: the pivot line becomes
            # a ray on the feasible side, every other generator is shifted
            # along it into the constraint hyperplane.
            l0 = lines[pivot]
            d0 = line_dots[pivot]
            if d0 > 0:
                l0 = tuple(-a for a in l0)
                d0 = -d0
            new_lines = []
            for i, l in enumerate(lines):
                if i == pivot:
                    continue
                dl = line_dots[i]
                if dl == 0:
                    new_lines.append(l)
                else:
                    new_lines.append(_scale_primitive(tuple(d0 * a - dl * b for a, b in zip(l, l0))))
            new_vecs = []
            for r, _ in rays:
                dr = _dot(m, r)
                if dr == 0:
                    new_vecs.append(r)
                else:
                    new_vecs.append(_scale_primitive(tuple(-d0 * a + dr * b for a, b in zip(r, l0))))
            new_vecs.append(l0)
            inserted.append(m)
            lines = new_lines
            rays = [(v, _zero_set(v, inserted)) for v in new_vecs]
            continue

        neg, zero, pos = [], [], []
        for r, zs in rays:
            d = _dot(m, r)
            if d < 0:
                neg.append((r, zs, d))
            elif d == 0:
                zero.append((r, zs))
            else:
                pos.append((r, zs, d))
        if not pos:
            inserted.append(m)
            rays = [(r, zs) for r, zs, _ in neg] + [(r, zs | bit) for r, zs in zero]
            continue
        all_rays = rays
        inserted.append(m)
        combined: list[tuple[IntVec, int]] = []
        for rp, zsp, dp in pos:
            for rn, zsn, dn in neg:
                common = zsp & zsn
                adjacent = True
                for r3, zs3 in all_rays:
                    if r3 is rp or r3 is rn:
                        continue
                    if common & zs3 == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vec = _scale_primitive(tuple(dp * a - dn * b for a, b in zip(rn, rp)))
                combined.append((vec, _zero_set(vec, inserted)))
        rays = ([(r, zs) for r, zs, _ in neg]
                + [(r, zs | bit) for r, zs in zero]
                + combined)

    return rays, lines


def dual_description(rows: Sequence[Sequence[int]], dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """Extreme rays and lineality basis, without the tight-set bookkeeping."""
    rays, lines = dual_description_with_zero_sets(rows, dim)
    return [r for r, _ in rays], lines
