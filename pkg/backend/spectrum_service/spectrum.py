import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Dict, Iterable, List, Optional

import numpy as np

from errors import ConditionIViolated
from geometry_service.bitset import Bitset
from geometry_service.projective_space import GeometryIndex, Hyperplane, SubspaceTable
from geometry_service.workers import run_chunked
from settings import get_settings
from spectrum_service.reports import ConditionOutcome, ConditionReport, SpectrumSummary, Witness

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolidSet:
    """A set of solids, as a bitset over the hyperplane indices of a GeometryIndex."""

    members: Bitset

    @classmethod
    def from_indices(cls, indices: Iterable[int], index: GeometryIndex) -> "SolidSet":
        return cls(Bitset.from_indices(indices, index.n))

    @classmethod
    def from_hyperplanes(cls, hyperplanes: Iterable[Hyperplane], index: GeometryIndex) -> "SolidSet":
        return cls.from_indices([index.hyperplane_index(h) for h in hyperplanes], index)

    @property
    def size(self) -> int:
        return self.members.count()

    def mask(self) -> np.ndarray:
        return self.members.mask()

    def indices(self) -> np.ndarray:
        return self.members.indices()


class PointColor(IntEnum):
    RED = 0
    WHITE = 1
    BLACK = 2


@dataclass(frozen=True)
class ColorMap:
    colors: np.ndarray  # PointColor per point index

    def mask(self, color: PointColor) -> np.ndarray:
        return self.colors == color

    def bitset(self, color: PointColor) -> Bitset:
        return Bitset.from_mask(self.mask(color))

    @property
    def red(self) -> int:
        return int(np.count_nonzero(self.colors == PointColor.RED))

    @property
    def white(self) -> int:
        return int(np.count_nonzero(self.colors == PointColor.WHITE))

    @property
    def black(self) -> int:
        return int(np.count_nonzero(self.colors == PointColor.BLACK))

    def census(self) -> tuple:
        return self.red, self.white, self.black


@dataclass(frozen=True)
class SolidPartition:
    E: Bitset
    T: Bitset
    H: Bitset

    def sizes(self) -> tuple:
        return self.E.count(), self.T.count(), self.H.count()


def point_allowed(q: int) -> List[int]:
    return sorted({0, q**3 // 2, (q**3 - q**2) // 2})


def plane_allowed(q: int) -> List[int]:
    return sorted({0, q // 2, q})


def condition_iii_target(q: int) -> int:
    return q * (q + 1) // 2


def e_value(q: int, size: int) -> Optional[int]:
    """|E| / (q^2/2) when it is an integer."""
    half_square = q * q // 2
    return size // half_square if size % half_square == 0 else None


def multiset(values: np.ndarray) -> Dict[int, int]:
    keys, counts = np.unique(values, return_counts=True)
    return {int(k): int(c) for k, c in zip(keys, counts)}


def point_counts(solids: SolidSet, index: GeometryIndex) -> np.ndarray:
    return index.incidence_counts(solids.mask(), desc="point counts")


def _table_counts(table: SubspaceTable, solids: SolidSet) -> np.ndarray:
    return solids.mask()[table.hyperplanes].sum(axis=1, dtype=np.int64)


def plane_counts(solids: SolidSet, index: GeometryIndex) -> np.ndarray:
    return _table_counts(index.planes, solids)


def line_counts(solids: SolidSet, index: GeometryIndex) -> np.ndarray:
    return _table_counts(index.lines, solids)


def _witnesses(kind: str, bad: np.ndarray, counts: np.ndarray, describe, cap: int) -> List[Witness]:
    return [Witness(kind=kind, object=describe(int(i)), count=int(counts[i])) for i in bad[:cap]]


def color_points(solids: SolidSet, index: GeometryIndex, counts: Optional[np.ndarray] = None) -> ColorMap:
    q = index.q
    counts = point_counts(solids, index) if counts is None else counts
    bad = np.flatnonzero(~np.isin(counts, point_allowed(q)))
    if bad.size:
        cap = get_settings().witness_cap
        raise ConditionIViolated(_witnesses("point", bad, counts, lambda i: str(index.point(i)), cap))
    colors = np.full(index.n, PointColor.BLACK, dtype=np.int8)
    colors[counts == 0] = PointColor.RED
    colors[counts == q**3 // 2] = PointColor.WHITE
    return ColorMap(colors)


def partition_solids(solids: SolidSet, colors: ColorMap, index: GeometryIndex) -> SolidPartition:
    touches_red = index.incidence_counts(colors.mask(PointColor.RED), desc="red solids") > 0
    in_e = solids.mask()
    return SolidPartition(
        E=solids.members,
        T=Bitset.from_mask(touches_red),
        H=Bitset.from_mask(~in_e & ~touches_red),
    )


def check_conditions(solids: SolidSet, index: GeometryIndex, witness_cap: Optional[int] = None) -> ConditionReport:
    """Evaluate conditions (I), (II) and (III) over every point, plane and line.

    Failures are reported as data with up to witness_cap witnesses.
    """
    q = index.q
    cap = get_settings().witness_cap if witness_cap is None else witness_cap
    size = solids.size

    pts = point_counts(solids, index)
    planes = plane_counts(solids, index)
    lines = line_counts(solids, index)

    bad_points = np.flatnonzero(~np.isin(pts, point_allowed(q)))
    bad_planes = np.flatnonzero(~np.isin(planes, plane_allowed(q)))
    target = condition_iii_target(q)

    violations = _witnesses("point", bad_points, pts, lambda i: str(index.point(i)), cap)
    violations += _witnesses(
        "plane", bad_planes, planes, lambda i: str(index.subspace(index.planes, i)), cap - len(violations)
    )

    e = e_value(q, size)
    report = ConditionReport(
        q=q,
        size=size,
        condI=ConditionOutcome(holds=bad_points.size == 0, allowed=point_allowed(q), observed=multiset(pts)),
        condII=ConditionOutcome(holds=bad_planes.size == 0, allowed=plane_allowed(q), observed=multiset(planes)),
        condIII=ConditionOutcome(holds=bool(np.any(lines == target)), allowed=[target], observed=multiset(lines)),
        e=e,
        eResidue=None if e is None else e % q,
        violations=violations,
        violationsTruncated=bad_points.size + bad_planes.size > len(violations),
    )
    logger.info(
        "conditions for %d solids: I=%s II=%s III=%s e=%s",
        size,
        report.condI.holds,
        report.condII.holds,
        report.condIII.holds,
        e,
    )
    return report


def spectrum_summary(solids: SolidSet, index: GeometryIndex) -> SpectrumSummary:
    return SpectrumSummary(
        q=index.q,
        size=solids.size,
        points=multiset(point_counts(solids, index)),
        planes=multiset(plane_counts(solids, index)),
        lines=multiset(line_counts(solids, index)),
    )


def per_solid_histogram(index: GeometryIndex, table: SubspaceTable, values: np.ndarray, nbins: int) -> np.ndarray:
    """hist[h, v]: number of subspaces inside solid h whose value is v."""
    values = np.asarray(values, dtype=np.int64)

    def chunk(start: int, stop: int) -> np.ndarray:
        keys = table.hyperplanes[start:stop].astype(np.int64) * nbins + values[start:stop, None]
        return np.bincount(keys.ravel(), minlength=index.n * nbins)

    parts = run_chunked(chunk, len(table), n_jobs=index.n_jobs, desc="per-solid histogram")
    return np.sum(parts, axis=0).reshape(index.n, nbins)
