"""Exhaustive verification of the counting lemmas behind the classification.

Every quantity is an exact integer. Each entry compares the value the
lemma predicts at the given q with the value observed on the input set.
"""

import logging
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from errors import LemmaPreconditionError
from geometry_service.projective_space import GeometryIndex, SubspaceTable, span
from settings import get_settings
from spectrum_service.reports import LemmaEntry, LemmaReport
from spectrum_service.spectrum import (
    ColorMap,
    PointColor,
    SolidPartition,
    SolidSet,
    check_conditions,
    color_points,
    line_counts,
    multiset,
    partition_solids,
    per_solid_histogram,
)

logger = logging.getLogger(__name__)


def _distinct(values) -> List[Any]:
    """Sorted distinct values (rows become lists)."""
    arr = np.asarray(values)
    if arr.size == 0:
        return []
    if arr.ndim == 1:
        return [int(v) for v in np.unique(arr)]
    return [[int(x) for x in row] for row in np.unique(arr, axis=0)]


def _present(hist_rows: np.ndarray) -> List[int]:
    """Values that occur in at least one of the given histogram rows."""
    return [int(v) for v in np.flatnonzero(hist_rows.sum(axis=0))]


class _Suite:
    def __init__(self):
        self.entries: List[LemmaEntry] = []
        self.skipped: List[str] = []

    def equal(self, lemma: str, statement: str, expected: Any, observed: Any) -> None:
        self.entries.append(
            LemmaEntry(lemma=lemma, statement=statement, expected=expected, observed=observed, passed=expected == observed)
        )

    def subset(self, lemma: str, statement: str, allowed: Sequence[int], observed: Sequence[int]) -> None:
        allowed = sorted(set(allowed))
        self.entries.append(
            LemmaEntry(
                lemma=lemma,
                statement=statement,
                expected=allowed,
                observed=list(observed),
                passed=set(observed) <= set(allowed),
            )
        )


class _Context:
    """Counts shared by the entries of one suite run."""

    def __init__(self, solids: SolidSet, index: GeometryIndex, colors: ColorMap):
        q = index.q
        self.q = q
        self.index = index
        self.size = solids.size
        self.colors = colors
        self.partition: SolidPartition = partition_solids(solids, colors, index)
        self.red = colors.mask(PointColor.RED)
        self.white = colors.mask(PointColor.WHITE)
        self.black = colors.mask(PointColor.BLACK)
        self.e_mask = self.partition.E.mask()
        self.t_mask = self.partition.T.mask()
        self.h_mask = self.partition.H.mask()
        self.solid_black = index.incidence_counts(self.black, desc="black per solid")
        self.solid_white = index.incidence_counts(self.white, desc="white per solid")
        self.lines: SubspaceTable = index.lines
        self.planes: SubspaceTable = index.planes
        self.line_black = self.black[self.lines.points].sum(axis=1)
        self.plane_black = self.black[self.planes.points].sum(axis=1)
        self.plane_e = self.e_mask[self.planes.hyperplanes].sum(axis=1)
        self.plane_h = self.h_mask[self.planes.hyperplanes].sum(axis=1)
        self.line_e = line_counts(solids, index)
        # line sizes |line ∩ black| per solid, over the lines inside it
        self.line_hist = per_solid_histogram(index, self.lines, self.line_black, q + 2)


def _general_entries(suite: _Suite, ctx: _Context, e: int) -> None:
    q, size = ctx.q, ctx.size
    w, b = ctx.colors.white, ctx.colors.black
    suite.equal(
        "e-integer",
        "q^2/2 divides |E|",
        0,
        (2 * size) % (q * q),
    )
    suite.subset("e-residue", "e is congruent to 0 or -1 modulo q", [0, q - 1], [e % q])
    suite.equal(
        "incidence-pairs",
        "r*0 + w*q^3/2 + b*(q^3-q^2)/2 = |E|(q^3+q^2+q+1)",
        size * (q**3 + q**2 + q + 1),
        w * q**3 // 2 + b * (q**3 - q**2) // 2,
    )
    half_w, half_b = q**3 // 2, (q**3 - q**2) // 2
    suite.equal(
        "incidence-triples",
        "w*(q^3/2)(q^3/2-1) + b*((q^3-q^2)/2)((q^3-q^2)/2-1) = |E|(|E|-1)(q^2+q+1)",
        size * (size - 1) * (q**2 + q + 1),
        w * half_w * (half_w - 1) + b * half_b * (half_b - 1),
    )
    suite.equal(
        "white-count",
        "w*q = e([e-(q-1)](q^2+q+1) - q(q^3-q^2-2))",
        e * ((e - (q - 1)) * (q**2 + q + 1) - q * (q**3 - q**2 - 2)),
        w * q,
    )
    e_idx = np.flatnonzero(ctx.e_mask)
    s = (q * q - e) * (q * q + q + 1) - q
    suite.equal(
        "black-per-e-solid",
        "every solid of E has s black and t white points, s + q = (q^2-e)(q^2+q+1), s + t = q^3+q^2+q+1",
        [[s, ctx.index.solid_size - s]] if size else [],
        _distinct(np.column_stack([ctx.solid_black[e_idx], ctx.solid_white[e_idx]])),
    )


def _case_a_entries(suite: _Suite, ctx: _Context) -> None:
    q, index = ctx.q, ctx.index
    e_idx = np.flatnonzero(ctx.e_mask)
    suite.equal("case-a/size", "|E| = q^3(q-1)/2", q**3 * (q - 1) // 2, ctx.size)
    suite.equal(
        "case-a/e-solid-points",
        "each solid of E has q^3+q^2 black and q+1 white points",
        [[q**3 + q**2, q + 1]],
        _distinct(np.column_stack([ctx.solid_black[e_idx], ctx.solid_white[e_idx]])),
    )
    suite.equal(
        "case-a/census",
        "q+2 red, q^2-1 white and q^4+q^3 black points",
        [q + 2, q * q - 1, q**4 + q**3],
        list(ctx.colors.census()),
    )

    plane_hist = per_solid_histogram(index, ctx.planes, ctx.plane_e, q + 2)
    rows = plane_hist[e_idx]
    classes = np.column_stack(
        [rows[:, 0], rows[:, q // 2], rows[:, q], rows.sum(axis=1) - rows[:, 0] - rows[:, q // 2] - rows[:, q]]
    )
    suite.equal(
        "case-a/e-solid-plane-classes",
        "inside a solid of E: x=0 planes in 0, y=q^3+q^2 in q/2, z=q+1 in q solids of E; none elsewhere",
        [[0, q**3 + q**2, q + 1, 0]],
        _distinct(classes),
    )

    red_idx = np.flatnonzero(ctx.red)
    carrier = span([index.point(int(i)) for i in red_idx]) if red_idx.size else None
    suite.equal("case-a/red-coplanar", "the red points span a plane", 2, carrier.dim if carrier else -1)
    if carrier is None or carrier.dim != 2:
        return
    carrier_mask = index.subspace_points(carrier).mask()
    suite.equal(
        "case-a/carrier-colours",
        "the plane of the red points has u=q^2-1 white and v=0 black points",
        [q * q - 1, 0],
        [int(np.count_nonzero(carrier_mask & ctx.white)), int(np.count_nonzero(carrier_mask & ctx.black))],
    )

    inside = carrier_mask[ctx.lines.points].all(axis=1)
    reds_on_line = ctx.red[ctx.lines.points[inside]].sum(axis=1)
    suite.equal(
        "case-a/hyperoval",
        "every line of the carrier meets the red points in 0 or 2 points; (q^2-q)/2 lines miss them",
        {0: (q * q - q) // 2, 2: (q + 2) * (q + 1) // 2},
        multiset(reds_on_line),
    )

    solid_red = index.incidence_counts(ctx.red, desc="red per solid")
    disjoint = solid_red == 0
    suite.equal(
        "case-a/disjoint-solids",
        "E is exactly the set of solids disjoint from the hyperoval, (q^2-q)q^2/2 of them",
        {"disjoint": (q * q - q) * q * q // 2, "mismatched": 0},
        {"disjoint": int(disjoint.sum()), "mismatched": int(np.count_nonzero(disjoint != ctx.e_mask))},
    )
    suite.equal(
        "case-a/colour-layout",
        "white = carrier minus hyperoval, black = off the carrier, T = solids meeting the hyperoval, H empty",
        {"white": 0, "black": 0, "T": 0, "H": 0},
        {
            "white": int(np.count_nonzero(ctx.white != (carrier_mask & ~ctx.red))),
            "black": int(np.count_nonzero(ctx.black != ~carrier_mask)),
            "T": int(np.count_nonzero(ctx.t_mask != (solid_red > 0))),
            "H": int(np.count_nonzero(ctx.h_mask)),
        },
    )
    suite.subset(
        "case-a/line-spectrum",
        "a line lies in 0, q(q-1)/2, q^2/2 or q^2 solids of E",
        [0, q * (q - 1) // 2, q * q // 2, q * q],
        _distinct(ctx.line_e),
    )


def _h_solid_line_planes(ctx: _Context) -> Dict[str, int]:
    """For each H-solid and line inside it: (2q+1)-planes through the line = y, (q+1)-planes = q+1-y."""
    q, index = ctx.q, ctx.index
    lines, planes = ctx.lines, ctx.planes
    mismatches = one_planes = 0
    for h in np.flatnonzero(ctx.h_mask):
        plane_rows = np.flatnonzero((planes.hyperplanes == h).any(axis=1))
        line_rows = np.flatnonzero((lines.hyperplanes == h).any(axis=1))
        plane_pts = np.zeros((len(plane_rows), index.n), dtype=bool)
        np.put_along_axis(plane_pts, planes.points[plane_rows].astype(np.int64), True, axis=1)
        contains = plane_pts[:, lines.points[line_rows]].all(axis=2)
        pb = ctx.plane_black[plane_rows]
        y = ctx.line_black[line_rows]
        m = (contains & (pb == 2 * q + 1)[:, None]).sum(axis=0)
        n = (contains & (pb == q + 1)[:, None]).sum(axis=0)
        mismatches += int(np.count_nonzero((m != y) | (n != q + 1 - y)))
        one_planes += int(np.count_nonzero(pb == 1))
    return {"mismatches": mismatches, "onePlanes": one_planes}


def _case_b_entries(suite: _Suite, ctx: _Context) -> None:
    q, index = ctx.q, ctx.index
    e_idx = np.flatnonzero(ctx.e_mask)
    h_idx = np.flatnonzero(ctx.h_mask)
    t_idx = np.flatnonzero(ctx.t_mask)
    suite.equal("case-b/size", "|E| = q^2(q^2-1)/2", q * q * (q * q - 1) // 2, ctx.size)
    suite.equal(
        "case-b/census",
        "one red, q^4-1 white and q^3+q^2+q+1 black points",
        [1, q**4 - 1, q**3 + q**2 + q + 1],
        list(ctx.colors.census()),
    )
    suite.equal(
        "case-b/partition-sizes",
        "|E|, |T|, |H| = q^2(q^2-1)/2, q^3+q^2+q+1, q^2(q^2+1)/2",
        [q * q * (q * q - 1) // 2, q**3 + q**2 + q + 1, q * q * (q * q + 1) // 2],
        list(ctx.partition.sizes()),
    )
    suite.equal(
        "case-b/e-solid-points",
        "each solid of E has q^2+1 black and q^3+q white points",
        [[q * q + 1, q**3 + q]],
        _distinct(np.column_stack([ctx.solid_black[e_idx], ctx.solid_white[e_idx]])),
    )
    suite.equal("case-b/h-solid-black", "each solid of H has (q+1)^2 black points", [(q + 1) ** 2], _distinct(ctx.solid_black[h_idx]))
    suite.equal("case-b/t-solid-black", "each solid of T has q^2+q+1 black points", [q * q + q + 1], _distinct(ctx.solid_black[t_idx]))

    red_idx = np.flatnonzero(ctx.red)
    if len(red_idx) != 1:
        return
    red = red_idx[0]
    planes_through = (ctx.planes.points == red).any(axis=1)
    lines_through = (ctx.lines.points == red).any(axis=1)
    suite.equal(
        "case-b/planes-through-red",
        "a plane through the red point has q+1 black points",
        [q + 1],
        _distinct(ctx.plane_black[planes_through]),
    )
    suite.equal(
        "case-b/lines-through-red",
        "a line through the red point has exactly one black point",
        [1],
        _distinct(ctx.line_black[lines_through]),
    )
    off = ~planes_through
    triples = np.column_stack([ctx.plane_black[off], ctx.plane_e[off], ctx.plane_h[off]])
    allowed = [[1, q, 0], [q + 1, q // 2, q // 2], [2 * q + 1, 0, q]]
    observed = _distinct(triples)
    suite.entries.append(
        LemmaEntry(
            lemma="case-b/plane-classes",
            statement="a plane off the red point is a 1-, (q+1)- or (2q+1)-plane with (e,h) = (q,0), (q/2,q/2), (0,q)",
            expected=allowed,
            observed=observed,
            passed=all(row in allowed for row in observed),
        )
    )
    suite.equal(
        "case-b/plane-black-identity",
        "a plane off the red point has 2q+1-2e black points",
        0,
        int(np.count_nonzero(ctx.plane_black[off] != 2 * q + 1 - 2 * ctx.plane_e[off])),
    )

    type_sizes = [0, 1, 2, q + 1]
    suite.subset("case-b/e-solid-ovoid", "no line of a solid of E has 3 black points", [0, 1, 2], _present(ctx.line_hist[e_idx]))
    suite.subset("case-b/h-solid-line-type", "lines of a solid of H meet the black points in 0, 1, 2 or q+1", type_sizes, _present(ctx.line_hist[h_idx]))
    suite.subset("case-b/t-solid-line-type", "lines of a solid of T meet the black points in 0, 1, 2 or q+1", type_sizes, _present(ctx.line_hist[t_idx]))
    suite.subset("case-b/black-line-type", "the black points form a set of type (0, 1, 2, q+1)", type_sizes, _distinct(ctx.line_black))
    suite.equal(
        "case-b/black-not-in-solid",
        "no solid contains every black point",
        False,
        bool(np.any(ctx.solid_black == ctx.colors.black)),
    )
    if q <= get_settings().flag_q_max:
        suite.equal(
            "case-b/h-solid-line-planes",
            "through a line with y black points an H-solid has q+1-y (q+1)-planes, y (2q+1)-planes and no 1-planes",
            {"mismatches": 0, "onePlanes": 0},
            _h_solid_line_planes(ctx),
        )
    else:
        suite.skipped.append("case-b/h-solid-line-planes")
    suite.subset(
        "case-b/line-spectrum",
        "a line lies in 0, q(q-1)/2, q^2/2 or q(q+1)/2 solids of E",
        [0, q * (q - 1) // 2, q * q // 2, q * (q + 1) // 2],
        _distinct(ctx.line_e),
    )


def verify_lemma_suite(solids: SolidSet, index: GeometryIndex, witness_cap: Optional[int] = None) -> LemmaReport:
    """Run the general entries, then the suite of the case selected by e mod q.

    A set failing (I) or (II) raises LemmaPreconditionError carrying its
    condition report, with at most witness_cap witnesses.
    """
    q = index.q
    report = check_conditions(solids, index, witness_cap=witness_cap)
    if not (report.condI.holds and report.condII.holds):
        raise LemmaPreconditionError("conditions (I) and (II) must hold before the lemma suite runs", report=report)
    e: Optional[int] = report.e
    if e is None:
        raise LemmaPreconditionError("q^2/2 does not divide |E|", report=report)

    colors = color_points(solids, index)
    ctx = _Context(solids, index, colors)
    suite = _Suite()
    _general_entries(suite, ctx, e)

    case = "NA"
    if e % q == 0:
        case = "A"
        _case_a_entries(suite, ctx)
    elif e % q == q - 1:
        case = "B"
        _case_b_entries(suite, ctx)
    passed = case != "NA" and all(entry.passed for entry in suite.entries)
    logger.info("lemma suite (case %s): %d entries, all passed: %s", case, len(suite.entries), passed)
    return LemmaReport(
        q=q, size=solids.size, case=case, e=e, entries=suite.entries, skipped=suite.skipped, allPassed=passed
    )
