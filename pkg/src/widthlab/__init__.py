"""Diametric completeness invariants of convex bodies in normed planes and 3-spaces."""

__version__ = "0.1.0"

from widthlab._scalar import get_tolerance, set_tolerance, tolerance
from widthlab.completeness import (ball_intersection_identity, check_u1, check_um,
                                   complete_greedily, completeness_report,
                                   experiment_extend_simplex, experiment_properties_ade,
                                   is_ball, is_complete, is_constant_width,
                                   unique_completion)
from widthlab.estimator import DiametricCompletion
from widthlab.geometry import (Halfspace, Polytope, contains, convex_hull, equal,
                               intersect_halfspaces, minkowski_sum, plane_section,
                               scale_translate)
from widthlab.hulls import (sampled_tight_hull, sampled_wide_hull,
                            tight_spherical_hull, wide_spherical_hull)
from widthlab.metrics import (circumradius, convexity_profile, diameter,
                              modulus_of_convexity, width, width_report)
from widthlab.norms import (BiconeNorm, EuclideanNorm, PolytopalNorm, hexagonal_bipyramid_norm,
                            icosahedron_norm, l1_norm, linf_norm, make_ball, make_norm)
from widthlab.scenarios import load_scene, run_scene

__all__ = [
    "BiconeNorm", "DiametricCompletion", "EuclideanNorm", "Halfspace", "PolytopalNorm",
    "Polytope", "ball_intersection_identity", "check_u1", "check_um", "circumradius",
    "complete_greedily", "completeness_report", "contains", "convex_hull",
    "convexity_profile", "diameter", "equal", "experiment_extend_simplex",
    "experiment_properties_ade", "get_tolerance", "hexagonal_bipyramid_norm",
    "icosahedron_norm", "intersect_halfspaces", "is_ball", "is_complete",
    "is_constant_width", "l1_norm", "linf_norm", "load_scene", "make_ball", "make_norm",
    "minkowski_sum", "modulus_of_convexity", "plane_section", "run_scene",
    "sampled_tight_hull", "sampled_wide_hull", "scale_translate", "set_tolerance",
    "tight_spherical_hull", "tolerance", "unique_completion", "wide_spherical_hull",
    "width", "width_report",
]
