"""Degeneracy ratio of bounded convex polytopes and its singular-value bound."""

from .errors import PolyroundError
from .polytope import (
    HPolytope,
    VertexSet,
    diameter,
    enumerate_vertices,
    facet_geometry,
    from_simplex,
    is_bounded,
    normalize,
    origin_interior,
    remove_redundant,
)
from .lp import chebyshev, solve_lp
from .spectral import sigma_min, svd
from .roundness import RoundnessReport, BoundWitness, analyze, certify_reconstruction, extract_witness

__version__ = "0.1.0"
