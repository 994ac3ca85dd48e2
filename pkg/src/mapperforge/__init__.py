"""Forward and inverse Mapper constructions with exact certificates."""

__version__ = "0.1.0"

from .complex import IsoCertificate, SimplicialComplex, isomorphic, validate
from .mapper import IndexedCover, Lens, MapperOutput, PointCloud, mapper_run, mapper_trivial, nerve
from .inverse import StarParams, synthesize_star_params, verify_round_trip
from .geometry import (
    ConvexFamily,
    SearchConfig,
    VPolytope,
    certify_family,
    geometric_star_cover,
    polytope_intersection,
    synthesize_convex_cover,
)
from .extension import LipschitzData, mcshane_extend, safety_radii, verify_stability

__all__ = [
    "ConvexFamily",
    "IndexedCover",
    "IsoCertificate",
    "Lens",
    "LipschitzData",
    "MapperOutput",
    "PointCloud",
    "SearchConfig",
    "SimplicialComplex",
    "StarParams",
    "VPolytope",
    "certify_family",
    "geometric_star_cover",
    "isomorphic",
    "mapper_run",
    "mapper_trivial",
    "mcshane_extend",
    "nerve",
    "polytope_intersection",
    "safety_radii",
    "synthesize_convex_cover",
    "synthesize_star_params",
    "validate",
    "verify_round_trip",
    "verify_stability",
]
