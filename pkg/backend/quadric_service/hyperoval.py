from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

import numpy as np

from errors import HyperovalRecoveryError
from field_service.galois_field import FieldSpec
from geometry_service.bitset import Bitset
from geometry_service.projective_space import GeometryIndex, ProjectivePoint, Subspace, is_arc, span


@dataclass(frozen=True)
class Hyperoval:
    points: Tuple[ProjectivePoint, ...]
    carrier: Subspace

    @classmethod
    def validated(cls, points: Sequence[ProjectivePoint]) -> "Hyperoval":
        """Checks size q+2, coplanarity and the arc property, in that order."""
        if not points:
            raise HyperovalRecoveryError("no points given")
        q = points[0].field.order
        if len(points) != q + 2:
            raise HyperovalRecoveryError(f"expected {q + 2} points, got {len(points)}")
        carrier = span(points)
        if carrier.dim != 2:
            raise HyperovalRecoveryError(f"points span a subspace of dimension {carrier.dim}, not a plane")
        if not is_arc(points):
            raise HyperovalRecoveryError("three of the points are collinear")
        return cls(tuple(sorted(points, key=lambda p: p.coords)), carrier)

    def bitset(self, index: GeometryIndex) -> Bitset:
        return Bitset.from_indices([index.point_index(p) for p in self.points], index.n)


def regular_hyperoval(field: FieldSpec) -> Hyperoval:
    """The conic x0 x2 = x1^2 of the plane x3 = x4 = 0 together with its nucleus (0,1,0,0,0)."""
    points = [ProjectivePoint(field, (1, t, field.square_bits(t), 0, 0)) for t in range(field.order)]
    points += [ProjectivePoint(field, (0, 1, 0, 0, 0)), ProjectivePoint(field, (0, 0, 1, 0, 0))]
    return Hyperoval.validated(points)


def solids_disjoint_from(hyperoval: Hyperoval, index: GeometryIndex) -> np.ndarray:
    counts = index.incidence_counts(hyperoval.bitset(index).mask(), desc="hyperoval solids")
    return np.flatnonzero(counts == 0)


def carrier_line_profile(hyperoval: Hyperoval, index: GeometryIndex) -> Dict[int, int]:
    """Histogram of |line ∩ O| over the lines of the carrier plane."""
    carrier = index.subspace_points(hyperoval.carrier).mask()
    on_oval = hyperoval.bitset(index).mask()
    lines = index.lines.points
    inside = carrier[lines].all(axis=1)
    sizes, counts = np.unique(on_oval[lines[inside]].sum(axis=1), return_counts=True)
    return {int(s): int(c) for s, c in zip(sizes, counts)}
