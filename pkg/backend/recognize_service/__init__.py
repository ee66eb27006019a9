from recognize_service.recognize import (
    LineTypeProfile,
    Verdict,
    VerdictPayload,
    classify,
    condition_III_disambiguation,
    fit_quadric,
    line_type_profile,
    recover_hyperoval,
)

__all__ = [
    "LineTypeProfile",
    "Verdict",
    "VerdictPayload",
    "classify",
    "condition_III_disambiguation",
    "fit_quadric",
    "line_type_profile",
    "recover_hyperoval",
]
