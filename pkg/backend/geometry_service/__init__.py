from geometry_service.bitset import Bitset
from geometry_service.projective_space import (
    GeometryIndex,
    Hyperplane,
    ProjectivePoint,
    Subspace,
    enumerate_lines,
    enumerate_planes,
    enumerate_points,
    gaussian_binomial,
    get_index,
    hyperplanes_through,
    incident,
    is_arc,
    meet,
    point_count,
    span,
)

__all__ = [
    "Bitset",
    "GeometryIndex",
    "Hyperplane",
    "ProjectivePoint",
    "Subspace",
    "enumerate_lines",
    "enumerate_planes",
    "enumerate_points",
    "gaussian_binomial",
    "get_index",
    "hyperplanes_through",
    "incident",
    "is_arc",
    "meet",
    "point_count",
    "span",
]
