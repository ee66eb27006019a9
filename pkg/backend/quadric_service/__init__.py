from quadric_service.hyperoval import Hyperoval, carrier_line_profile, regular_hyperoval, solids_disjoint_from
from quadric_service.quadric import (
    QuadraticForm,
    SectionKind,
    SectionPartition,
    SectionType,
    elliptic_witness_hyperplane,
    evaluate,
    nucleus,
    section_type,
    solids_by_section,
    standard_parabolic,
)

__all__ = [
    "Hyperoval",
    "QuadraticForm",
    "SectionKind",
    "SectionPartition",
    "SectionType",
    "carrier_line_profile",
    "elliptic_witness_hyperplane",
    "evaluate",
    "nucleus",
    "regular_hyperoval",
    "section_type",
    "solids_by_section",
    "solids_disjoint_from",
    "standard_parabolic",
]
