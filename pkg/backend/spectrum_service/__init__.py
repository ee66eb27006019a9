from spectrum_service.families import FAMILY_KINDS, Family, elliptic_solids, generate, hyperoval_solids
from spectrum_service.lemmas import verify_lemma_suite
from spectrum_service.reports import ConditionReport, LemmaReport, SpectrumSummary, dump_json
from spectrum_service.solid_io import (
    read_point_set,
    read_solid_set,
    solid_set_from_duals,
    write_point_set,
    write_solid_set,
)
from spectrum_service.spectrum import (
    ColorMap,
    PointColor,
    SolidPartition,
    SolidSet,
    check_conditions,
    color_points,
    line_counts,
    partition_solids,
    plane_counts,
    point_counts,
    spectrum_summary,
)

__all__ = [
    "FAMILY_KINDS",
    "ColorMap",
    "ConditionReport",
    "Family",
    "LemmaReport",
    "PointColor",
    "SolidPartition",
    "SolidSet",
    "SpectrumSummary",
    "check_conditions",
    "color_points",
    "dump_json",
    "elliptic_solids",
    "generate",
    "hyperoval_solids",
    "line_counts",
    "partition_solids",
    "plane_counts",
    "point_counts",
    "read_point_set",
    "read_solid_set",
    "solid_set_from_duals",
    "spectrum_summary",
    "verify_lemma_suite",
    "write_point_set",
    "write_solid_set",
]
