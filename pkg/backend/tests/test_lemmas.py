import numpy as np
import pytest

from errors import LemmaPreconditionError
from settings import get_settings
from spectrum_service import SolidSet, elliptic_solids, verify_lemma_suite


def _entries(report):
    return {entry.lemma: entry for entry in report.entries}


def _failures(report):
    return [(e.lemma, e.expected, e.observed) for e in report.entries if not e.passed]


def test_elliptic_family_runs_case_b(pg4, elliptic4):
    report = verify_lemma_suite(elliptic4, pg4)
    assert report.case == "B"
    assert report.e == 15
    assert _failures(report) == []
    assert report.allPassed
    assert report.skipped == []

    entries = _entries(report)
    assert entries["case-b/partition-sizes"].observed == [120, 85, 136]
    assert entries["case-b/e-solid-points"].observed == [[17, 68]]
    assert entries["case-b/h-solid-black"].observed == [25]
    assert entries["case-b/t-solid-black"].observed == [21]
    assert entries["case-b/planes-through-red"].observed == [5]
    assert entries["case-b/lines-through-red"].observed == [1]
    assert entries["case-b/plane-classes"].observed == [[1, 4, 0], [5, 2, 2], [9, 0, 4]]
    assert entries["case-b/h-solid-line-planes"].observed == {"mismatches": 0, "onePlanes": 0}
    assert entries["case-b/line-spectrum"].observed == [0, 6, 8, 10]


def test_hyperoval_family_runs_case_a(pg4, hyperoval4):
    report = verify_lemma_suite(hyperoval4, pg4)
    assert report.case == "A"
    assert report.e == 12
    assert _failures(report) == []
    assert report.allPassed

    entries = _entries(report)
    assert entries["case-a/census"].observed == [6, 15, 320]
    assert entries["case-a/e-solid-plane-classes"].observed == [[0, 80, 5, 0]]
    assert entries["case-a/hyperoval"].observed == {0: 6, 2: 15}
    assert entries["case-a/line-spectrum"].observed == [0, 6, 8, 16]
    assert "case-b/census" not in entries


def test_general_identities_are_present(pg4, elliptic4):
    lemmas = set(_entries(verify_lemma_suite(elliptic4, pg4)))
    assert {
        "e-integer",
        "e-residue",
        "incidence-pairs",
        "incidence-triples",
        "white-count",
        "black-per-e-solid",
    } <= lemmas


def test_conditions_must_hold(pg4, elliptic4):
    outside = np.flatnonzero(~elliptic4.mask())[0]
    broken = SolidSet.from_indices(np.append(elliptic4.indices(), outside), pg4)
    with pytest.raises(LemmaPreconditionError):
        verify_lemma_suite(broken, pg4)


def test_precondition_error_carries_capped_report(pg4, elliptic4):
    outside = np.flatnonzero(~elliptic4.mask())[0]
    swapped = SolidSet.from_indices(np.append(elliptic4.indices()[1:], outside), pg4)
    with pytest.raises(LemmaPreconditionError) as excinfo:
        verify_lemma_suite(swapped, pg4, witness_cap=4)
    report = excinfo.value.report
    assert report.e == 15
    assert len(report.violations) == 4


def test_empty_set_fails_case_a_without_raising(pg4):
    report = verify_lemma_suite(SolidSet.from_indices([], pg4), pg4)
    assert report.case == "A"
    assert not report.allPassed
    assert not _entries(report)["case-a/red-coplanar"].passed


def test_flag_lemma_is_gated_by_settings(monkeypatch, pg4, elliptic4):
    monkeypatch.setenv("GEOM_FLAG_Q_MAX", "2")
    get_settings.cache_clear()
    report = verify_lemma_suite(elliptic4, pg4)
    assert report.skipped == ["case-b/h-solid-line-planes"]
    assert "case-b/h-solid-line-planes" not in _entries(report)
    assert report.allPassed


@pytest.mark.slow
def test_elliptic_family_q8(pg8):
    report = verify_lemma_suite(elliptic_solids(pg8), pg8)
    assert report.case == "B"
    assert report.e == 63
    assert _failures(report) == []
    assert report.skipped == ["case-b/h-solid-line-planes"]
