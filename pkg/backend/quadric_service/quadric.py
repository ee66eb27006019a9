import logging
from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Tuple

import numpy as np

from errors import FieldMismatchError, SingularFormError
from field_service.galois_field import FieldElement, FieldSpec
from geometry_service.bitset import Bitset
from geometry_service.linalg import nullspace
from geometry_service.projective_space import GeometryIndex, Hyperplane, ProjectivePoint, VECTOR_LENGTH

logger = logging.getLogger(__name__)

# monomials x_i x_j, i <= j, in lexicographic order of (i, j)
MONOMIALS: Tuple[Tuple[int, int], ...] = tuple(
    (i, j) for i in range(VECTOR_LENGTH) for j in range(i, VECTOR_LENGTH)
)


@dataclass(frozen=True)
class QuadraticForm:
    field: FieldSpec
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(MONOMIALS):
            raise ValueError(f"a quadratic form on 5 variables has {len(MONOMIALS)} coefficients")
        if any(not 0 <= c < self.field.order for c in self.coeffs):
            raise ValueError(f"coefficient outside GF({self.field.order})")

    @classmethod
    def from_terms(cls, field: FieldSpec, terms: dict) -> "QuadraticForm":
        """Build from {(i, j): coefficient}."""
        coeffs = [0] * len(MONOMIALS)
        for (i, j), c in terms.items():
            coeffs[MONOMIALS.index((min(i, j), max(i, j)))] ^= int(c)
        return cls(field, tuple(coeffs))

    @classmethod
    def parse(cls, field: FieldSpec, text: str) -> "QuadraticForm":
        parts = text.strip().split(":")
        if len(parts) != len(MONOMIALS):
            raise ValueError(f"expected {len(MONOMIALS)} ':'-separated coefficients")
        return cls(field, tuple(field.parse_bits(p) for p in parts))

    def __str__(self) -> str:
        return ":".join(FieldSpec.format_bits(c) for c in self.coeffs)

    def normalized(self) -> "QuadraticForm":
        lead = next((c for c in self.coeffs if c), 0)
        if lead == 0:
            return self
        scale = self.field.inv_bits(lead)
        return QuadraticForm(self.field, tuple(self.field.mul_bits(c, scale) for c in self.coeffs))

    def evaluate_array(self, coords: np.ndarray) -> np.ndarray:
        field = self.field
        coords = np.asarray(coords, dtype=field.dtype)
        acc = np.zeros(len(coords), dtype=field.dtype)
        for (i, j), a in zip(MONOMIALS, self.coeffs):
            if a:
                acc ^= field.mul_array(a, field.mul_array(coords[:, i], coords[:, j]))
        return acc

    def polar_matrix(self) -> np.ndarray:
        """Matrix of b(x, y) = f(x+y) + f(x) + f(y); its diagonal vanishes in characteristic 2."""
        B = np.zeros((VECTOR_LENGTH, VECTOR_LENGTH), dtype=self.field.dtype)
        for (i, j), a in zip(MONOMIALS, self.coeffs):
            if i != j:
                B[i, j] = B[j, i] = a
        return B

    def substitute(self, matrix: Sequence[Sequence[int]]) -> "QuadraticForm":
        """The form x -> f(Mx)."""
        field = self.field
        M = [[int(v) for v in row] for row in matrix]
        coeffs = [0] * len(MONOMIALS)
        for (i, j), a in zip(MONOMIALS, self.coeffs):
            if not a:
                continue
            for pos, (k, l) in enumerate(MONOMIALS):
                if k == l:
                    term = field.mul_bits(M[i][k], M[j][k])
                else:
                    term = field.mul_bits(M[i][k], M[j][l]) ^ field.mul_bits(M[i][l], M[j][k])
                coeffs[pos] ^= field.mul_bits(a, term)
        return QuadraticForm(field, tuple(coeffs))

    def zero_set(self, index: GeometryIndex) -> Bitset:
        if index.field != self.field:
            raise FieldMismatchError(f"{self.field!r} vs index over {index.field!r}")
        return Bitset.from_mask(self.evaluate_array(index.coords) == 0)


class SectionKind(str, Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    CONE = "cone"
    OTHER = "other"


@dataclass(frozen=True)
class SectionType:
    kind: SectionKind
    points: int


@dataclass(frozen=True)
class SectionPartition:
    """Hyperplane indices grouped by how they meet the quadric."""

    elliptic: np.ndarray
    hyperbolic: np.ndarray
    cone: np.ndarray

    def sizes(self) -> Tuple[int, int, int]:
        return len(self.elliptic), len(self.hyperbolic), len(self.cone)


def standard_parabolic(field: FieldSpec) -> QuadraticForm:
    """Q(x) = x0^2 + x1 x2 + x3 x4."""
    return QuadraticForm.from_terms(field, {(0, 0): 1, (1, 2): 1, (3, 4): 1})


def evaluate(form: QuadraticForm, point: ProjectivePoint) -> FieldElement:
    if form.field != point.field:
        raise FieldMismatchError(f"{form.field!r} vs {point.field!r}")
    value = form.evaluate_array(np.asarray([point.coords]))[0]
    return FieldElement(form.field, int(value))


def nucleus(form: QuadraticForm) -> ProjectivePoint:
    radical = nullspace(form.field, form.polar_matrix(), VECTOR_LENGTH)
    if len(radical) != 1:
        raise SingularFormError(f"polar form has a radical of dimension {len(radical)}, expected 1")
    point = ProjectivePoint.of(form.field, radical[0])
    if evaluate(form, point).bits == 0:
        raise SingularFormError(f"form vanishes on its radical point {point}")
    return point


def classify_count(q: int, count: int) -> SectionType:
    if count == q * q + 1:
        return SectionType(SectionKind.ELLIPTIC, count)
    if count == (q + 1) ** 2:
        return SectionType(SectionKind.HYPERBOLIC, count)
    if count == q * q + q + 1:
        return SectionType(SectionKind.CONE, count)
    return SectionType(SectionKind.OTHER, count)


def section_type(form: QuadraticForm, hyperplane: Hyperplane, index: GeometryIndex) -> SectionType:
    h = index.hyperplane_index(hyperplane)
    count = (form.zero_set(index) & index.row(h)).count()
    return classify_count(index.q, count)


def solids_by_section(form: QuadraticForm, index: GeometryIndex) -> SectionPartition:
    q = index.q
    counts = index.incidence_counts(form.zero_set(index).mask(), desc="sections")
    elliptic = np.flatnonzero(counts == q * q + 1)
    hyperbolic = np.flatnonzero(counts == (q + 1) ** 2)
    cone = np.flatnonzero(counts == q * q + q + 1)
    classified = len(elliptic) + len(hyperbolic) + len(cone)
    if classified != index.n:
        odd = sorted(set(counts.tolist()) - {q * q + 1, (q + 1) ** 2, q * q + q + 1})
        raise SingularFormError(f"{index.n - classified} solids meet the form in {odd} points")
    logger.info("sections of %s: %d elliptic, %d hyperbolic, %d cone", form, *map(len, (elliptic, hyperbolic, cone)))
    return SectionPartition(elliptic, hyperbolic, cone)


def elliptic_witness_hyperplane(field: FieldSpec) -> Hyperplane:
    """x0 + c x1 + x2 = 0 with trace(c) = 1; meets the standard form in an elliptic quadric."""
    c = next(b for b in range(field.order) if field.trace_bits(b) == 1)
    return Hyperplane.of(field, (1, c, 1, 0, 0))
