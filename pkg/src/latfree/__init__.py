"""Exact rational polyhedral computation for lattice-free cuts and closures.

Core objects and operations:

* :class:`~latfree.polyhedra.Polyhedron` with exact H/V conversion, faces,
  containment and volume;
* lattice queries (:mod:`latfree.lattice`): integer points, lattice-freeness,
  maximality, max-facet-width, unimodular equivalence;
* the interior-removal operator and closures (:mod:`latfree.cuts`);
* standard families (:mod:`latfree.families`): splits, cross-polytopes, thin
  maximal bodies, circumscribed-body enumeration;
* a text file format (:mod:`latfree.fileio`) and a CLI (``latfree``).
"""

from .cuts import (
    BisectedEdge,
    CutHalfspace,
    DominanceVector,
    EdgeClassification,
    classify_edges,
    closure,
    dominance_vector,
    dominates,
    l_cuts,
    minimal_dominating_subfamily,
    remove_interior,
)
from .families import (
    SplitSpec,
    cross_polytope,
    enumerate_circumscribed,
    flat_family,
    flat_family_member,
    sign_class,
    sign_class_polytope,
    split_specs,
    splits,
)
from .lattice import (
    INFINITE_WIDTH,
    EnumerationBounds,
    enumeration_bounds,
    family_width,
    integer_hull_equals,
    is_lattice_free,
    is_maximal_lattice_free,
    lattice_points,
    lineality_reduction,
    max_facet_width,
    zd_equivalent,
)
from .polyhedra import (
    Constraint,
    Edge,
    GeometryError,
    HRep,
    Polyhedron,
    UnsupportedGeometryError,
    VRep,
    edges,
    h_to_v,
    make_constraint,
    point_in,
    v_to_h,
    volume,
)

__version__ = "0.1.0"

__all__ = [
    "BisectedEdge", "Constraint", "CutHalfspace", "DominanceVector", "Edge",
    "EdgeClassification", "EnumerationBounds", "GeometryError", "HRep",
    "INFINITE_WIDTH", "Polyhedron", "SplitSpec", "UnsupportedGeometryError",
    "VRep", "classify_edges", "closure", "cross_polytope", "dominance_vector",
    "dominates", "edges", "enumerate_circumscribed", "enumeration_bounds",
    "family_width", "flat_family", "flat_family_member", "h_to_v",
    "integer_hull_equals", "is_lattice_free", "is_maximal_lattice_free",
    "l_cuts", "lattice_points", "lineality_reduction", "make_constraint",
    "max_facet_width", "minimal_dominating_subfamily", "point_in",
    "remove_interior", "sign_class", "sign_class_polytope", "split_specs",
    "splits", "v_to_h", "volume", "zd_equivalent",
]
