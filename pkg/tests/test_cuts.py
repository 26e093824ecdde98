from fractions import Fraction

import pytest

from latfree.cuts import (
    classify_edges,
    closure,
    cuts_from_result,
    dominance_vector,
    dominates,
    l_cuts,
    minimal_dominating_subfamily,
    remove_interior,
)
from latfree.lattice import lattice_points
from latfree.polyhedra import GeometryError, Polyhedron

from _oracles import remove_interior_bruteforce
from conftest import (
    random_cutting_split,
    random_polytope,
    relevant_splits,
    split_body,
)

F = Fraction


def triangle():
    return Polyhedron.from_generators(2, [(F(1, 2), 0), (F(1, 2), 1), (F(3, 2), F(1, 2))])


def box(n):
    return Polyhedron.from_inequalities(
        2, [((1, 0), n), ((-1, 0), 0), ((0, 1), n), ((0, -1), 0)])


# -- classification -----------------------------------------------------------

def test_classify_box_all_preserved():
    cls = classify_edges(box(3), split_body(2, (1, 0), 2))
    assert len(cls.preserved) == 4
    assert not cls.removed and not cls.bisected


def test_classify_triangle_against_split():
    cls = classify_edges(triangle(), split_body(2, (1, 0), 1))
    assert len(cls.removed) == 1
    assert len(cls.bisected) == 2
    points = {be.crossing_point for be in cls.bisected}
    assert points == {(1, F(1, 4)), (1, F(3, 4))}
    assert {be.u for be in cls.bisected} == {(2, 1), (2, -1)}
    assert all(be.crossing_scalar == F(1, 4) for be in cls.bisected)


def test_classify_disjoint_all_preserved():
    far = split_body(2, (1, 0), 10)
    cls = classify_edges(triangle(), far)
    assert len(cls.preserved) == 3


def test_classify_ray_edges():
    quad = Polyhedron.from_inequalities(2, [((-1, 0), 0), ((0, -1), 0)])
    # split containing the apex in its interior bisects both rays
    L = Polyhedron.from_inequalities(2, [((1, 1), 1), ((-1, -1), 1)])
    cls = classify_edges(quad, L)
    assert len(cls.bisected) == 2
    assert all(be.interior_end == "apex" for be in cls.bisected)
    assert {be.crossing_point for be in cls.bisected} == {(1, 0), (0, 1)}


def test_classify_ray_inside_interior_is_removed():
    P = Polyhedron.from_inequalities(
        2, [((1, 0), F(3, 4)), ((-1, 0), -F(1, 4)), ((0, -1), 0)])
    L = split_body(2, (1, 0), 1)
    cls = classify_edges(P, L)
    assert len(cls.removed) >= 1  # the vertical rays never leave int(L)


def test_classify_rejects_lineality():
    with pytest.raises(GeometryError, match="lineality"):
        classify_edges(split_body(2, (1, 0), 0), split_body(2, (0, 1), 0))


# -- interior removal -----------------------------------------------------------

def test_remove_disjoint_returns_p():
    P = triangle()
    assert remove_interior(P, split_body(2, (1, 0), 10)) == P


def test_remove_swallowed_returns_empty():
    P = triangle()
    wide = Polyhedron.from_inequalities(2, [((1, 0), 2), ((-1, 0), 0)])
    assert remove_interior(P, wide).is_empty


def test_remove_triangle_example():
    R = remove_interior(triangle(), split_body(2, (1, 0), 1))
    assert R == Polyhedron.from_generators(
        2, [(1, F(1, 4)), (1, F(3, 4)), (F(3, 2), F(1, 2))])


def test_remove_matches_bruteforce(rng):
    for _ in range(40):
        d = rng.choice((2, 2, 3))
        P = random_polytope(rng, d)
        L = random_cutting_split(rng, P)
        if L is None:
            continue
        assert remove_interior(P, L) == remove_interior_bruteforce(P, L)


def test_remove_matches_bruteforce_unbounded(rng):
    done = 0
    while done < 30:
        d = rng.choice((2, 2, 3))
        base = random_polytope(rng, d, span=2)
        rays = [r for r in (tuple(rng.randint(-1, 2) for _ in range(d))
                            for _ in range(rng.randint(1, 2))) if any(r)]
        if not rays:
            continue
        P = Polyhedron.from_generators(d, base.vertices, rays)
        if P.lines:
            continue
        L = random_cutting_split(rng, P)
        if L is None:
            continue
        assert remove_interior(P, L) == remove_interior_bruteforce(P, L)
        done += 1


def test_remove_contraction_and_monotone(rng):
    for _ in range(15):
        P = random_polytope(rng, 2)
        Q = Polyhedron.from_generators(2, list(P.vertices) + [(4, 4)])
        L = random_cutting_split(rng, P)
        if L is None:
            continue
        RP, RQ = remove_interior(P, L), remove_interior(Q, L)
        assert P.contains(RP)
        assert RQ.contains(RP)


def test_remove_integer_points_preserved(rng):
    for _ in range(25):
        P = random_polytope(rng, 2, span=3)
        L = random_cutting_split(rng, P)
        if L is None:
            continue
        R = remove_interior(P, L)
        assert lattice_points(R) == lattice_points(P)


def test_remove_lineality_product_identity(rng):
    # P = R x P', L = R x L' gives R_L(P) = R x R_{L'}(P')
    for _ in range(10):
        Pp = random_polytope(rng, 2)
        L1 = random_cutting_split(rng, Pp)
        if L1 is None:
            continue
        lift = lambda Q: Polyhedron.from_inequalities(
            3, [((0,) + c.a, c.b) for c in Q.constraints])
        R_direct = remove_interior(lift(Pp), lift(L1))
        R_factor = remove_interior(Pp, L1)
        assert R_direct == lift(R_factor) if not R_factor.is_empty else R_direct.is_empty


def test_remove_point_polyhedron():
    pt_in = Polyhedron.from_generators(2, [(F(1, 2), F(1, 2))])
    pt_out = Polyhedron.from_generators(2, [(2, F(1, 2))])
    L = split_body(2, (1, 0), 1)
    assert remove_interior(pt_in, L).is_empty
    assert remove_interior(pt_out, L) == pt_out


def test_remove_nonlinear_recession_guard():
    quad = Polyhedron.from_inequalities(2, [((-1, 0), 0), ((0, -1), 0)])
    # quadrant body shifted so P is not swallowed: recession cones overlap,
    # the conservative fallback returns P with a warning
    L = Polyhedron.from_inequalities(2, [((-1, 0), -F(1, 2)), ((0, -1), F(1, 2))])
    with pytest.warns(UserWarning, match="recession"):
        assert remove_interior(quad, L) == quad


def test_remove_swallowed_by_nonlinear_recession_body():
    quad = Polyhedron.from_inequalities(2, [((-1, 0), 0), ((0, -1), 0)])
    L = Polyhedron.from_inequalities(2, [((-1, 0), F(1, 2)), ((0, -1), F(1, 2))])
    assert remove_interior(quad, L).is_empty


def test_remove_nonlinear_recession_safe_cases():
    quad = Polyhedron.from_inequalities(2, [((-1, 0), 0), ((0, -1), 0)])
    # P strictly inside int(L): empty
    L = Polyhedron.from_inequalities(2, [((-1, 0), 1), ((0, -1), 1)])
    assert remove_interior(quad, L).is_empty
    # opposite quadrant body: recession cones only share the origin
    Lop = Polyhedron.from_inequalities(2, [((1, 0), 1), ((0, 1), 1)])
    R = remove_interior(quad, Lop)
    assert R == remove_interior_bruteforce(quad, Lop)


# -- cuts -------------------------------------------------------------------------

def test_l_cuts_triangle_single_cut():
    cuts = l_cuts(triangle(), split_body(2, (1, 0), 1))
    assert len(cuts) == 1
    c = cuts[0].constraint
    assert (c.a, c.b) == ((-1, 0), F(-1))
    assert not cuts[0].infeasible


def test_l_cuts_disjoint_empty():
    assert l_cuts(triangle(), split_body(2, (1, 0), 10)) == []


def test_l_cuts_infeasibility_certificate():
    P = triangle()
    wide = Polyhedron.from_inequalities(2, [((1, 0), 2), ((-1, 0), 0)])
    cuts = l_cuts(P, wide)
    assert len(cuts) == 1 and cuts[0].infeasible
    c = cuts[0].constraint
    assert P.support_value(c.a) is not None
    assert all(c.value(v) > c.b for v in P.vertices)  # H ∩ P = ∅


def test_cut_halfspaces_contain_difference(rng):
    for _ in range(15):
        P = random_polytope(rng, 2)
        L = random_cutting_split(rng, P)
        if L is None:
            continue
        R = remove_interior(P, L)
        for cut in cuts_from_result(P, R):
            if cut.infeasible:
                continue
            c = cut.constraint
            assert all(c.holds(v) for v in R.vertices)


# -- dominance ---------------------------------------------------------------------

def test_dominance_vector_triangle():
    P = triangle()
    L = split_body(2, (1, 0), 1)
    sig = classify_edges(P, L).signature
    dv = dominance_vector(P, L, sig)
    # h = 2, m = 1, scale = 2! = 2; crossing scalars 1/4 with integral u = (2, ±1)
    assert dv.scale == 2
    assert dv.entries == (8, 8)


def test_dominance_vector_integral_p_unit_crossing():
    P = Polyhedron.from_generators(2, [(0, 0), (2, 0), (0, 2), (2, 2)])
    L = split_body(2, (1, 0), 1)
    sig = classify_edges(P, L).signature
    dv = dominance_vector(P, L, sig)
    assert dv.scale == 1
    assert all(e == dv.scale for e in dv.entries)


def test_dominance_vector_entries_positive(rng):
    for _ in range(30):
        P = random_polytope(rng, 2)
        L = random_cutting_split(rng, P)
        if L is None:
            continue
        cls = classify_edges(P, L)
        if not cls.bisected:
            continue
        for be in cls.bisected:
            assert be.crossing_scalar > 0
            assert L.point_location(be.crossing_point) == "boundary"
            assert L.point_location(be.p) == "interior"
        dv = dominance_vector(P, L, cls.signature)
        assert all(e > 0 for e in dv.entries)


def test_dominance_vector_partition_mismatch():
    P = triangle()
    L = split_body(2, (1, 0), 1)
    other = split_body(2, (0, 1), 1)
    sig = classify_edges(P, L).signature
    with pytest.raises(GeometryError, match="incomparable"):
        dominance_vector(P, other, sig)


def test_dominates_reflexive_and_examples():
    P = triangle()
    L = split_body(2, (1, 0), 1)
    wide = Polyhedron.from_inequalities(2, [((1, 0), 2), ((-1, 0), 0)])
    assert dominates(P, L, L)
    assert dominates(P, wide, L)
    assert not dominates(P, L, wide)


def test_dominates_fast_path_agrees_with_inclusion(rng):
    for _ in range(20):
        P = random_polytope(rng, 2)
        La = random_cutting_split(rng, P)
        Lb = random_cutting_split(rng, P)
        if La is None or Lb is None:
            continue
        expect = remove_interior(P, Lb).contains(remove_interior(P, La))
        assert dominates(P, La, Lb) == expect


def test_dominates_through_lineality_reduction():
    # P with lineality forces the inclusion path
    P = Polyhedron.from_inequalities(2, [((1, 0), 3), ((-1, 0), -F(1, 2))])
    L = split_body(2, (1, 0), 1)       # removes [1/2, 1)
    L2 = Polyhedron.from_inequalities(2, [((1, 0), 2), ((-1, 0), 0)])
    assert remove_interior(P, L2).contains(remove_interior(P, L2))
    assert dominates(P, L2, L)
    assert not dominates(P, L, L2)


def test_minimal_dominating_subfamily():
    P = triangle()
    L = split_body(2, (1, 0), 1)
    wide = Polyhedron.from_inequalities(2, [((1, 0), 2), ((-1, 0), 0)])
    assert minimal_dominating_subfamily(P, [L]) == [L]
    assert minimal_dominating_subfamily(P, [L, wide]) == [wide]
    # ties keep the first occurrence
    kept = minimal_dominating_subfamily(P, [L, L])
    assert len(kept) == 1 and kept[0] is L


def test_minimal_subfamily_preserves_closure(rng):
    for _ in range(8):
        P = random_polytope(rng, 2, span=2)
        fam = relevant_splits(P, 1)
        sub = minimal_dominating_subfamily(P, fam)
        assert closure(P, sub) == closure(P, fam)
        for L in fam:
            assert any(dominates(P, K, L) for K in sub)
        for i, K in enumerate(sub):
            assert not any(dominates(P, K2, K) for j, K2 in enumerate(sub) if i != j)


# -- closures -------------------------------------------------------------------------

def test_closure_empty_family_returns_p():
    P = triangle()
    assert closure(P, []) == P


def test_closure_integral_box_identity():
    P = box(3)
    fam = relevant_splits(P, 1)
    assert closure(P, fam) == P


def test_closure_triangle_empty_with_certificate():
    P = triangle()
    fam = relevant_splits(P, 1)
    out, cuts = closure(P, fam, return_cuts=True)
    assert out.is_empty
    assert cuts
    assert lattice_points(P) == []


def test_closure_workers_deterministic():
    P = triangle()
    fam = relevant_splits(P, 1)
    a = closure(P, fam, workers=1)
    b = closure(P, fam, workers=2)
    assert a == b
