"""Exact construction and verification of dual zonotopes with large 2D-shadows."""

from .arrangement import (
    ArrangementMatrix,
    enumerate_affine_vertices,
    enumerate_rays,
    realizable,
    region_sign_vectors,
    sign_map,
)
from .construction import (
    EasterEggParams,
    FacetSpec,
    easteregg_matrix,
    embed_facet,
    selected_vertex_signs,
    surviving_edge_signs,
)
from .exactmath import RatMat
from .projection import Polygon2, hull2, polar_polygon, section_polygon, shadow_boundary_walk, shadow_polygon, survives
from .zonotope import DualZonotope

__version__ = "0.1.0"

__all__ = [
    "ArrangementMatrix", "DualZonotope", "EasterEggParams", "FacetSpec", "Polygon2", "RatMat",
    "easteregg_matrix", "embed_facet", "enumerate_affine_vertices", "enumerate_rays", "hull2",
    "polar_polygon", "realizable", "region_sign_vectors", "section_polygon", "selected_vertex_signs",
    "shadow_boundary_walk", "shadow_polygon", "sign_map", "survives", "surviving_edge_signs",
]
