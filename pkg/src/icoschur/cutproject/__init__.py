"""Cut-and-project structures along Schur rotation paths."""

from .bain import bain_equivalence_check, strained_model_set
from .lattice import SC, HypercubicLattice, integer_ball
from .oracles import (
    LatticeFit,
    check_set_symmetry,
    detect_lattice_3d,
    fixed_axis,
    hausdorff_distance,
    is_hexagonal_prism,
    is_icosahedron,
    lattice_points_missing,
    nearest_point_distance,
    parallel_action,
)
from .patches import (
    GuardViolation,
    ModelSetPatch,
    PointArray,
    enumerate_model_set,
    find_collisions,
    orbit_array,
    project_array,
    projection_at,
)
from .window import (
    BOUNDARY,
    INSIDE,
    OUTSIDE,
    ProjectionWindow,
    SingularFrame,
    build_window,
    window_contains,
    window_from_points,
)

__all__ = [
    "BOUNDARY", "INSIDE", "OUTSIDE", "SC", "GuardViolation", "HypercubicLattice", "LatticeFit",
    "ModelSetPatch", "PointArray", "ProjectionWindow", "SingularFrame", "bain_equivalence_check",
    "build_window", "check_set_symmetry", "detect_lattice_3d", "enumerate_model_set",
    "find_collisions", "fixed_axis", "hausdorff_distance", "integer_ball", "is_hexagonal_prism",
    "is_icosahedron", "lattice_points_missing", "nearest_point_distance", "orbit_array",
    "parallel_action", "project_array", "projection_at", "strained_model_set", "window_contains",
    "window_from_points",
]
