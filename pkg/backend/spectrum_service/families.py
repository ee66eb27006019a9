"""The two solid families the classification ends in, and their point sets."""

import logging
from dataclasses import dataclass
from typing import Dict, Literal, Tuple

import numpy as np

from errors import ConfigError
from geometry_service.projective_space import GeometryIndex
from quadric_service.hyperoval import regular_hyperoval, solids_disjoint_from
from quadric_service.quadric import solids_by_section, standard_parabolic
from spectrum_service.spectrum import SolidSet, color_points, point_counts

logger = logging.getLogger(__name__)

FAMILY_KINDS: Tuple[str, ...] = ("elliptic-solids", "hyperoval-solids", "quadric-points", "hyperoval-points")


@dataclass(frozen=True)
class Family:
    kind: str
    record: Literal["dual", "point"]
    indices: np.ndarray

    def census(self, index: GeometryIndex) -> Dict[str, object]:
        out: Dict[str, object] = {"kind": self.kind, "q": index.q, "count": len(self.indices)}
        if self.record == "dual":
            solids = SolidSet.from_indices(self.indices, index)
            out["colours"] = list(color_points(solids, index, point_counts(solids, index)).census())
        return out


def elliptic_solids(index: GeometryIndex) -> SolidSet:
    """Solids meeting the standard parabolic quadric in an elliptic quadric."""
    return SolidSet.from_indices(solids_by_section(standard_parabolic(index.field), index).elliptic, index)


def hyperoval_solids(index: GeometryIndex) -> SolidSet:
    """Solids disjoint from the regular hyperoval of the plane x3 = x4 = 0."""
    return SolidSet.from_indices(solids_disjoint_from(regular_hyperoval(index.field), index), index)


def generate(kind: str, index: GeometryIndex) -> Family:
    if kind == "elliptic-solids":
        family = Family(kind, "dual", elliptic_solids(index).indices())
    elif kind == "hyperoval-solids":
        family = Family(kind, "dual", hyperoval_solids(index).indices())
    elif kind == "quadric-points":
        family = Family(kind, "point", standard_parabolic(index.field).zero_set(index).indices())
    elif kind == "hyperoval-points":
        family = Family(kind, "point", regular_hyperoval(index.field).bitset(index).indices())
    else:
        raise ConfigError(f"unknown kind '{kind}', expected one of {', '.join(FAMILY_KINDS)}")
    logger.info("generated %d %s for q=%d", len(family.indices), kind, index.q)
    return family
