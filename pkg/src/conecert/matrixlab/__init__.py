"""Explicit embeddings and brute-force oracles."""

from .embedding import (
    OrbitEmbedding,
    build_embedding,
    normal_from_diagonal,
    normal_from_matrix,
    shape_operator,
    sup_alpha_sq,
    tangent_frame,
)
from .oracles import normal_radius_witness, plucker_orbit_check, sym_det_floor

__all__ = [
    "OrbitEmbedding", "build_embedding", "normal_from_diagonal", "normal_from_matrix",
    "shape_operator", "sup_alpha_sq", "tangent_frame", "normal_radius_witness",
    "plucker_orbit_check", "sym_det_floor",
]
