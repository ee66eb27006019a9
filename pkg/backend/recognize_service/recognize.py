import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from errors import HyperovalRecoveryError, LemmaPreconditionError, SingularFormError
from geometry_service.bitset import Bitset
from geometry_service.linalg import nullspace
from geometry_service.projective_space import GeometryIndex, ProjectivePoint
from quadric_service.hyperoval import Hyperoval, solids_disjoint_from
from quadric_service.quadric import MONOMIALS, QuadraticForm, nucleus, solids_by_section
from spectrum_service.reports import ConditionReport
from spectrum_service.spectrum import (
    ColorMap,
    PointColor,
    SolidSet,
    check_conditions,
    color_points,
    condition_iii_target,
    line_counts,
    multiset,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineTypeProfile:
    """How many lines meet a point set in k points, for each k that occurs."""

    sizes: Dict[int, int]

    @property
    def types(self) -> Tuple[int, ...]:
        return tuple(sorted(self.sizes))

    def within(self, allowed) -> bool:
        return set(self.sizes) <= set(allowed)


def line_type_profile(points: Bitset, index: GeometryIndex) -> LineTypeProfile:
    mask = points.mask()
    return LineTypeProfile(multiset(mask[index.lines.points].sum(axis=1)))


def _monomial_matrix(index: GeometryIndex, point_indices: np.ndarray) -> np.ndarray:
    f = index.field
    coords = index.coords[point_indices]
    columns = [f.mul_array(coords[:, i], coords[:, j]) for i, j in MONOMIALS]
    return np.column_stack(columns) if len(coords) else np.zeros((0, len(MONOMIALS)), dtype=f.dtype)


def fit_quadric(points: Bitset, index: GeometryIndex) -> Optional[QuadraticForm]:
    """The quadric whose zero set is exactly the given points, if there is a unique one.

    Solves Q(P) = 0 for all P in the 15 coefficients, then checks the zero
    set of the solution against the input by full enumeration.
    """
    solutions = nullspace(index.field, _monomial_matrix(index, points.indices()), len(MONOMIALS))
    if len(solutions) != 1:
        logger.info("quadric fit: solution space has dimension %d", len(solutions))
        return None
    form = QuadraticForm(index.field, tuple(int(c) for c in solutions[0])).normalized()
    if form.zero_set(index) != points:
        logger.info("quadric fit: zero set of %s differs from the input", form)
        return None
    return form


def recover_hyperoval(colors: ColorMap, index: GeometryIndex) -> Hyperoval:
    red = colors.bitset(PointColor.RED).indices()
    if len(red) != index.q + 2:
        raise HyperovalRecoveryError(f"expected {index.q + 2} red points, found {len(red)}")
    return Hyperoval.validated([index.point(int(i)) for i in red])


def condition_III_disambiguation(solids: SolidSet, index: GeometryIndex) -> bool:
    """True when some line lies in exactly q(q+1)/2 solids of the set."""
    report = check_conditions(solids, index, witness_cap=0)
    if not (report.condI.holds and report.condII.holds):
        raise LemmaPreconditionError("conditions (I) and (II) must hold")
    return bool(np.any(line_counts(solids, index) == condition_iii_target(index.q)))


class VerdictPayload(BaseModel):
    case: Literal["A", "B", "NA"]
    hyperoval: Optional[List[str]] = None
    carrier: Optional[List[str]] = None
    form: Optional[str] = None
    nucleus: Optional[str] = None
    theoremApplicable: bool
    diagnostics: Dict[str, Any] = {}
    report: Optional[ConditionReport] = None


@dataclass
class Verdict:
    case: Literal["A", "B", "NA"]
    report: ConditionReport
    hyperoval: Optional[Hyperoval] = None
    form: Optional[QuadraticForm] = None
    nucleus: Optional[ProjectivePoint] = None
    theorem_applicable: bool = True
    diagnostics: Dict[str, Any] = field(default_factory=dict)

    def to_payload(self) -> VerdictPayload:
        oval = self.hyperoval
        return VerdictPayload(
            case=self.case,
            hyperoval=[str(p) for p in oval.points] if oval else None,
            # RREF rows lead with 1, so each is already a normalised point
            carrier=[str(ProjectivePoint(oval.carrier.field, row)) for row in oval.carrier.basis] if oval else None,
            form=str(self.form) if self.form else None,
            nucleus=str(self.nucleus) if self.nucleus else None,
            theoremApplicable=self.theorem_applicable,
            diagnostics=self.diagnostics,
            report=self.report if self.case == "NA" else None,
        )


def _membership_mismatch(expected: np.ndarray, solids: SolidSet, index: GeometryIndex) -> int:
    return (Bitset.from_indices(expected, index.n) ^ solids.members).count()


def _case_a(verdict: Verdict, colors: ColorMap, solids: SolidSet, index: GeometryIndex) -> None:
    q = index.q
    verdict.diagnostics["expectedCensus"] = [q + 2, q * q - 1, q**4 + q**3]
    try:
        hyperoval = recover_hyperoval(colors, index)
    except HyperovalRecoveryError as e:
        verdict.diagnostics["hyperoval"] = str(e)
        return
    mismatch = _membership_mismatch(solids_disjoint_from(hyperoval, index), solids, index)
    verdict.diagnostics["membershipMismatch"] = mismatch
    if mismatch == 0:
        verdict.case, verdict.hyperoval = "A", hyperoval


def _case_b(verdict: Verdict, colors: ColorMap, solids: SolidSet, index: GeometryIndex) -> None:
    q = index.q
    verdict.diagnostics["expectedCensus"] = [1, q**4 - 1, q**3 + q**2 + q + 1]
    form = fit_quadric(colors.bitset(PointColor.BLACK), index)
    if form is None:
        verdict.diagnostics["quadricFit"] = "no unique quadric has the black points as its zero set"
        return
    try:
        point = nucleus(form)
        sections = solids_by_section(form, index)
    except SingularFormError as e:
        verdict.diagnostics["quadricFit"] = str(e)
        return
    red = colors.bitset(PointColor.RED).indices().tolist()
    nucleus_is_red = red == [index.point_index(point)]
    mismatch = _membership_mismatch(sections.elliptic, solids, index)
    verdict.diagnostics.update(nucleusIsRed=nucleus_is_red, membershipMismatch=mismatch)
    if nucleus_is_red and mismatch == 0:
        verdict.case, verdict.form, verdict.nucleus = "B", form, point


def classify(solids: SolidSet, index: GeometryIndex, witness_cap: Optional[int] = None) -> Verdict:
    """Decide which of the two families a solid set is, and certify it.

    Anything that fails the hypotheses or a certification step comes back
    as case NA with the reason in the diagnostics; its condition report
    keeps at most witness_cap witnesses.
    """
    q = index.q
    report = check_conditions(solids, index, witness_cap=witness_cap)
    verdict = Verdict(case="NA", report=report, theorem_applicable=q > 2)
    if not (report.condI.holds and report.condII.holds):
        verdict.diagnostics["conditions"] = {"I": report.condI.holds, "II": report.condII.holds}
        return verdict
    if report.e is None:
        verdict.diagnostics["eInteger"] = False
        return verdict

    colors = color_points(solids, index)
    verdict.diagnostics["census"] = list(colors.census())
    if report.eResidue == 0:
        _case_a(verdict, colors, solids, index)
    elif report.eResidue == q - 1:
        _case_b(verdict, colors, solids, index)
    else:
        verdict.diagnostics["eResidue"] = report.eResidue
    census = verdict.diagnostics.get("expectedCensus")
    if census is not None:
        verdict.diagnostics["censusMatches"] = census == verdict.diagnostics["census"]
    logger.info("classified %d solids over GF(%d): case %s", solids.size, q, verdict.case)
    return verdict
