"""Minimum enclosing balls, extent measures, radius bounds and partition
theorems for finite point sets."""
from ._kernels import BACKEND
from .certify import (
    BoundReport,
    FormulaConsistencyWarning,
    PolytopeRadii,
    barycentric_circumradius_of_set,
    eggleston_check,
    jung_check,
    perelman_pukhov_extremes,
    radii_table,
    regular_polytope_radii,
    steinhagen_check,
    variant_jung_check,
)
from .convexsets import ConvexSet, hull_distance, hulls_common_point, minimax_point
from .errors import *  # noqa: F401,F403
from .extent import (
    ExtentProfile,
    Halfspace,
    chebyshev_inball,
    convex_hull_facets,
    diameter,
    extent_profile,
    width,
)
from .meb import MebResult, meb_oracle, minimum_enclosing_ball, verify_enclosure
from .partition import (
    ConvexCombination,
    PartitionCertificate,
    caratheodory_reduce,
    colorful_caratheodory_bruteforce,
    helly_check,
    nd_caratheodory,
    nd_helly_point,
    nd_tverberg_search,
    radon_partition,
    tverberg_bruteforce,
)
from .simplex import (
    Ball,
    Simplex,
    barycentric_circumradius,
    barycentric_inradius_and_thickness,
    circumball_of_support,
    edge_energies,
    median_profile,
    regular_measures,
    regular_simplex,
)
from .tolerance import DEFAULT_TOL, Tolerance

__version__ = "0.1.0"
