"""Exact certificates for Helly-type theorems with axis-parallel boxes as witnesses."""

from .boxlift import (
    FOUND,
    NO_BOX,
    UNBOUNDED,
    BoxSearchResult,
    axis_project,
    lift_family,
    max_lattice_box,
    subfamily_check,
)
from .certificates import (
    BoundRecord,
    PolygonCertificate,
    RatioRunCertificate,
    build_ratio_polygon,
    check_empty_polygon,
    check_intersect_empty,
    formula_bound,
    guaranteed_fraction,
    max_empty_convex_polygon,
    max_intersect_empty,
    ratio_scan,
    restrict_bound,
    union_bound,
)
from .constructions import (
    build_syndetic,
    cross_polytope_family,
    cube_vertex_family,
    dirichlet_convergents,
    figure1_family,
    hypercube_family,
    polynomial_set,
    power_set,
    prime_window,
    verify_syndetic,
)
from .errors import ConstructionError, DomainError, HellyError, PredicateViolation, ScaleError
from .exact import Point2, SurdScalar, convex_hull2, orientation, point_in_convex_polygon, surd_compare
from .family import FamilyInstance
from .harness import fractional_census, random_family, verify_colorful_instance, verify_theorem_instance
from .lattice import Box, PeriodicProductSet, PeriodicSet1D, lattice_count_box, periodic_count_box
from .polyhedra import Halfspace, LinearSystem, Polyhedron

__version__ = "0.1.0"
