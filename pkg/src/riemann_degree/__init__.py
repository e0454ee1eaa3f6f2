"""Topological degree of sphere maps given as ratios of polynomials in z and conj(z)."""

from .bipoly import (
    BiPoly,
    GaussianRational,
    UniPoly,
    associated_poly,
    evaluate,
    format_bipoly,
    homogeneous_coeff_norms,
    top_component,
)
from .degree import (
    DegreeReport,
    MapSpec,
    Method,
    degree_of,
    dominance_radius,
    mobius_reduce,
    numeric_degree,
)
from .disk_roots import RootCount, count_roots_in_disk, find_all_roots
from .parser import lower, parse, parse_bipoly
from .verify import Box2, certify_no_common_zeros, degree_via_area_integral
from .winding import SampledLoop, WindingConfig, winding_integral, winding_number

__all__ = [
    "BiPoly", "GaussianRational", "UniPoly", "associated_poly", "evaluate", "format_bipoly",
    "homogeneous_coeff_norms", "top_component", "DegreeReport", "MapSpec", "Method",
    "degree_of", "dominance_radius", "mobius_reduce", "numeric_degree", "RootCount",
    "count_roots_in_disk", "find_all_roots", "lower", "parse", "parse_bipoly", "Box2",
    "certify_no_common_zeros", "degree_via_area_integral", "SampledLoop", "WindingConfig",
    "winding_integral", "winding_number",
]
