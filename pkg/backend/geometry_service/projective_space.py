import logging
import threading
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import FieldMismatchError, GeometryError
from field_service.galois_field import FieldElement, FieldSpec
from geometry_service.bitset import Bitset
from geometry_service.linalg import nullspace, row_reduce
from geometry_service.workers import run_chunked

logger = logging.getLogger(__name__)

DIMENSION = 4  # PG(4, q)
VECTOR_LENGTH = DIMENSION + 1


def point_count(q: int, dim: int = DIMENSION) -> int:
    return (q ** (dim + 1) - 1) // (q - 1)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional vector subspaces of GF(q)^n."""
    if k < 0 or k > n:
        return 0
    num, den = 1, 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def normalize_vector(field: FieldSpec, coords: Sequence[int]) -> Tuple[int, ...]:
    coords = tuple(int(c) for c in coords)
    lead = next((c for c in coords if c), 0)
    if lead == 0:
        raise GeometryError("the zero vector is not a projective point")
    scale = field.inv_bits(lead)
    return tuple(field.mul_bits(c, scale) for c in coords)


def _parse_vector(field: FieldSpec, text: str) -> Tuple[int, ...]:
    parts = text.strip().split(":")
    if len(parts) != VECTOR_LENGTH:
        raise ValueError(f"expected {VECTOR_LENGTH} ':'-separated coordinates, got '{text}'")
    return normalize_vector(field, [field.parse_bits(p) for p in parts])


def _format_vector(coords: Sequence[int]) -> str:
    return ":".join(FieldSpec.format_bits(c) for c in coords)


def _check_normalized(field: FieldSpec, coords: Tuple[int, ...]) -> None:
    if len(coords) != VECTOR_LENGTH:
        raise GeometryError(f"expected {VECTOR_LENGTH} coordinates, got {len(coords)}")
    if any(not 0 <= c < field.order for c in coords):
        raise GeometryError(f"coordinate outside GF({field.order}): {coords}")
    lead = next((c for c in coords if c), 0)
    if lead != 1:
        raise GeometryError(f"coordinates {coords} are zero or not normalised")


@dataclass(frozen=True)
class ProjectivePoint:
    field: FieldSpec
    coords: Tuple[int, ...]

    def __post_init__(self):
        _check_normalized(self.field, self.coords)

    @classmethod
    def of(cls, field: FieldSpec, coords: Sequence[Union[int, FieldElement]]) -> "ProjectivePoint":
        return cls(field, normalize_vector(field, [int(c) for c in coords]))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "ProjectivePoint":
        return cls(field, _parse_vector(field, text))

    def elements(self) -> Tuple[FieldElement, ...]:
        return tuple(FieldElement(self.field, c) for c in self.coords)

    def __str__(self) -> str:
        return _format_vector(self.coords)


@dataclass(frozen=True)
class Hyperplane:
    """A solid of PG(4,q), given by normalised dual coordinates."""

    field: FieldSpec
    dual: Tuple[int, ...]

    def __post_init__(self):
        _check_normalized(self.field, self.dual)

    @classmethod
    def of(cls, field: FieldSpec, dual: Sequence[Union[int, FieldElement]]) -> "Hyperplane":
        return cls(field, normalize_vector(field, [int(c) for c in dual]))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "Hyperplane":
        return cls(field, _parse_vector(field, text))

    def as_subspace(self) -> "Subspace":
        return Subspace(self.field, _rows(nullspace(self.field, [self.dual], VECTOR_LENGTH)))

    def __str__(self) -> str:
        return _format_vector(self.dual)


def _rows(matrix: np.ndarray) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in matrix)


@dataclass(frozen=True)
class Subspace:
    """Projective subspace with a canonical reduced row-echelon basis.

    Equal subspaces have equal bases, so equality and hashing are exact.
    """

    field: FieldSpec
    basis: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, field: FieldSpec, rows) -> "Subspace":
        R, _ = row_reduce(field, np.asarray(rows, dtype=np.int64).reshape(-1, VECTOR_LENGTH))
        return cls(field, _rows(R))

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def annihilator(self) -> np.ndarray:
        """RREF rows spanning the dual coordinates of the solids through this subspace."""
        if not self.basis:
            return np.eye(VECTOR_LENGTH, dtype=self.field.dtype)
        return nullspace(self.field, self.basis, VECTOR_LENGTH)

    def contains(self, point: ProjectivePoint) -> bool:
        return Subspace.from_rows(self.field, list(self.basis) + [point.coords]).dim == self.dim

    def points(self) -> List[ProjectivePoint]:
        return [ProjectivePoint(self.field, tuple(int(c) for c in row)) for row in _span_points(self.field, self.basis)]

    def __str__(self) -> str:
        return "[" + ", ".join(_format_vector(row) for row in self.basis) + "]"


def _span_points(field: FieldSpec, basis) -> np.ndarray:
    basis = np.asarray(basis, dtype=field.dtype)
    coeffs = point_array(field, len(basis))
    acc = np.zeros((len(coeffs), VECTOR_LENGTH), dtype=field.dtype)
    for i in range(len(basis)):
        acc ^= field.mul_array(coeffs[:, i, None], basis[None, i, :])
    return acc


def incident(point: ProjectivePoint, hyperplane: Hyperplane) -> bool:
    if point.field != hyperplane.field:
        raise FieldMismatchError(f"{point.field!r} vs {hyperplane.field!r}")
    field = point.field
    total = 0
    for a, b in zip(point.coords, hyperplane.dual):
        total ^= field.mul_bits(a, b)
    return total == 0


def span(points: Sequence[ProjectivePoint]) -> Subspace:
    if not points:
        raise GeometryError("span of an empty point list")
    field = points[0].field
    for p in points:
        if p.field != field:
            raise FieldMismatchError(f"{field!r} vs {p.field!r}")
    return Subspace.from_rows(field, [p.coords for p in points])


def _annihilator_rows(obj: Union[Subspace, Hyperplane]) -> np.ndarray:
    if isinstance(obj, Hyperplane):
        return np.asarray([obj.dual], dtype=obj.field.dtype)
    return obj.annihilator()


def meet(a: Union[Subspace, Hyperplane], b: Union[Subspace, Hyperplane]) -> Optional[Subspace]:
    """Intersection of two subspaces; None when only the zero vector is shared."""
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field!r} vs {b.field!r}")
    field = a.field
    constraints = np.vstack([_annihilator_rows(a), _annihilator_rows(b)])
    basis = nullspace(field, constraints, VECTOR_LENGTH)
    if len(basis) == 0:
        return None
    return Subspace(field, _rows(basis))


def point_array(field: FieldSpec, length: int = VECTOR_LENGTH) -> np.ndarray:
    """All normalised vectors of GF(q)^length, in lexicographic order."""
    q = field.order
    blocks = []
    for lead in range(length - 1, -1, -1):
        tail = length - lead - 1
        values = np.array(list(product(range(q), repeat=tail)), dtype=field.dtype).reshape(q**tail, tail)
        block = np.zeros((q**tail, length), dtype=field.dtype)
        block[:, lead] = 1
        block[:, lead + 1 :] = values
        blocks.append(block)
    return np.vstack(blocks)


def rref_bases(field: FieldSpec, k: int) -> np.ndarray:
    """Every k x 5 reduced row-echelon matrix of rank k, grouped by pivot pattern."""
    q = field.order
    blocks = []
    for pivots in combinations(range(VECTOR_LENGTH), k):
        slots = [(i, j) for i in range(k) for j in range(pivots[i] + 1, VECTOR_LENGTH) if j not in pivots]
        values = np.array(list(product(range(q), repeat=len(slots))), dtype=field.dtype).reshape(
            q ** len(slots), len(slots)
        )
        block = np.zeros((len(values), k, VECTOR_LENGTH), dtype=field.dtype)
        for i, c in enumerate(pivots):
            block[:, i, c] = 1
        for s, (i, j) in enumerate(slots):
            block[:, i, j] = values[:, s]
        blocks.append(block)
    return np.concatenate(blocks)


def _index_dtype(n: int):
    return np.uint16 if n < 2**16 else np.uint32


@dataclass(frozen=True)
class SubspaceTable:
    """Lines or planes of PG(4,q), one row per subspace.

    points[i] are the sorted indices of the points on subspace i,
    hyperplanes[i] the sorted indices of the solids containing it.
    """

    dim: int
    bases: np.ndarray
    points: np.ndarray
    hyperplanes: np.ndarray

    def __len__(self) -> int:
        return len(self.points)


class GeometryIndex:
    """Enumeration backbone of PG(4,q).

    Points and hyperplanes share one coordinate table, so incidence is
    symmetric: row i of the packed incidence matrix is both the point set of
    hyperplane i and the set of hyperplanes through point i.
    """

    def __init__(self, field: FieldSpec, n_jobs: Optional[int] = None):
        self.field = field
        self.q = field.order
        self.n_jobs = n_jobs
        self.coords = point_array(field)
        self.n = len(self.coords)
        self._weights = np.array([self.q ** (VECTOR_LENGTH - 1 - k) for k in range(VECTOR_LENGTH)], dtype=np.int64)
        self.codes = self.coords.astype(np.int64) @ self._weights
        self.index_dtype = _index_dtype(self.n)
        logger.info("PG(4,%d): %d points, building incidence", self.q, self.n)
        self.incidence = np.vstack(run_chunked(self._incidence_chunk, self.n, n_jobs=n_jobs, desc="incidence"))
        self._lock = threading.Lock()
        self._lines: Optional[SubspaceTable] = None
        self._planes: Optional[SubspaceTable] = None

    @property
    def solid_size(self) -> int:
        return point_count(self.q, DIMENSION - 1)

    def _incidence_chunk(self, start: int, stop: int) -> np.ndarray:
        duals = self.coords[start:stop]
        acc = np.zeros((stop - start, self.n), dtype=self.field.dtype)
        for k in range(VECTOR_LENGTH):
            acc ^= self.field.mul_array(duals[:, k, None], self.coords[None, :, k])
        return np.packbits(acc == 0, axis=1)

    # lookups

    def indices_of(self, coords) -> np.ndarray:
        """Indices of already-normalised coordinate rows."""
        codes = np.asarray(coords).astype(np.int64) @ self._weights
        idx = np.searchsorted(self.codes, codes)
        idx = np.minimum(idx, self.n - 1)
        if np.any(self.codes[idx] != codes):
            raise GeometryError("coordinates are not normalised points of this geometry")
        return idx

    def point_index(self, point: ProjectivePoint) -> int:
        self._check_field(point.field)
        return int(self.indices_of([point.coords])[0])

    def hyperplane_index(self, hyperplane: Hyperplane) -> int:
        self._check_field(hyperplane.field)
        return int(self.indices_of([hyperplane.dual])[0])

    def point(self, i: int) -> ProjectivePoint:
        return ProjectivePoint(self.field, tuple(int(c) for c in self.coords[i]))

    def hyperplane(self, i: int) -> Hyperplane:
        return Hyperplane(self.field, tuple(int(c) for c in self.coords[i]))

    def _check_field(self, field: FieldSpec) -> None:
        if field != self.field:
            raise FieldMismatchError(f"{field!r} vs index over {self.field!r}")

    # incidence

    def row(self, i: int) -> Bitset:
        """Points of hyperplane i, equivalently hyperplanes through point i."""
        return Bitset(self.incidence[i], self.n)

    def common_row(self, rows) -> Bitset:
        words = np.bitwise_and.reduce(self.incidence[np.asarray(rows)], axis=0)
        return Bitset(words, self.n)

    def incidence_counts(self, mask, desc: Optional[str] = None) -> np.ndarray:
        """For each row i, how many masked indices are incident with i."""
        columns = np.flatnonzero(np.asarray(mask, dtype=bool))

        def chunk(start: int, stop: int) -> np.ndarray:
            block = np.unpackbits(self.incidence[start:stop], axis=1, count=self.n)
            return block[:, columns].sum(axis=1, dtype=np.int64)

        return np.concatenate(run_chunked(chunk, self.n, n_jobs=self.n_jobs, desc=desc))

    def subspace_points(self, subspace: Subspace) -> Bitset:
        self._check_field(subspace.field)
        rows = subspace.annihilator()
        if len(rows) == 0:
            return Bitset.empty(self.n)
        if len(rows) == VECTOR_LENGTH:
            return Bitset.full(self.n)
        return self.common_row(self.indices_of(rows))

    # line and plane tables, built on first use

    @property
    def lines(self) -> SubspaceTable:
        with self._lock:
            if self._lines is None:
                self._lines = self._build_table(2)
        return self._lines

    @property
    def planes(self) -> SubspaceTable:
        with self._lock:
            if self._planes is None:
                self._planes = self._build_table(3)
        return self._planes

    def _build_table(self, k: int) -> SubspaceTable:
        bases = rref_bases(self.field, k)
        coeffs = point_array(self.field, k)
        n_hyp = point_count(self.q, DIMENSION - k)
        logger.info("enumerating %d subspaces of projective dimension %d", len(bases), k - 1)

        def chunk(start: int, stop: int) -> Tuple[np.ndarray, np.ndarray]:
            block = bases[start:stop]
            acc = np.zeros((len(block), len(coeffs), VECTOR_LENGTH), dtype=self.field.dtype)
            for i in range(k):
                acc ^= self.field.mul_array(coeffs[None, :, i, None], block[:, None, i, :])
            pts = self.indices_of(acc.reshape(-1, VECTOR_LENGTH)).reshape(len(block), len(coeffs))
            pts.sort(axis=1)
            basis_idx = self.indices_of(block.reshape(-1, VECTOR_LENGTH)).reshape(len(block), k)
            common = self.incidence[basis_idx[:, 0]].copy()
            for i in range(1, k):
                common &= self.incidence[basis_idx[:, i]]
            hyp_mask = np.unpackbits(common, axis=1, count=self.n)
            hyps = np.nonzero(hyp_mask)[1].reshape(len(block), n_hyp)
            return pts.astype(self.index_dtype), hyps.astype(self.index_dtype)

        parts = run_chunked(chunk, len(bases), n_jobs=self.n_jobs, desc=f"dim-{k - 1} subspaces")
        points = np.vstack([p for p, _ in parts])
        hyperplanes = np.vstack([h for _, h in parts])
        order = np.lexsort(points.T[::-1])
        return SubspaceTable(k - 1, bases[order], points[order], hyperplanes[order])

    def subspace(self, table: SubspaceTable, i: int) -> Subspace:
        return Subspace(self.field, _rows(table.bases[i]))


@lru_cache(maxsize=8)
def get_index(q: int, modulus: Optional[int] = None, n_jobs: Optional[int] = None) -> GeometryIndex:
    return GeometryIndex(FieldSpec.from_order(q, modulus), n_jobs=n_jobs)


def enumerate_points(field: FieldSpec) -> List[ProjectivePoint]:
    return [ProjectivePoint(field, tuple(int(c) for c in row)) for row in point_array(field)]


def enumerate_lines(index: GeometryIndex) -> List[Subspace]:
    return [index.subspace(index.lines, i) for i in range(len(index.lines))]


def enumerate_planes(index: GeometryIndex) -> List[Subspace]:
    return [index.subspace(index.planes, i) for i in range(len(index.planes))]


def hyperplanes_through(subspace: Union[Subspace, ProjectivePoint], index: GeometryIndex) -> List[Hyperplane]:
    if isinstance(subspace, ProjectivePoint):
        subspace = span([subspace])
    index._check_field(subspace.field)
    rows = index.indices_of(subspace.basis)
    return [index.hyperplane(int(h)) for h in index.common_row(rows).indices()]


def is_arc(points: Sequence[ProjectivePoint]) -> bool:
    """True when no three of the points are collinear."""
    return all(span(list(triple)).dim == 2 for triple in combinations(points, 3))
