from deltakoszul.koszul.certify import (
    CrossCheck,
    KoszulCertificate,
    LevelVerdict,
    betti_levels,
    certify_algebra,
    certify_delta_koszul,
    check_criteria,
    criteria_level,
    cross_check_betti_criteria,
    generation_check,
)
from deltakoszul.koszul.profile import DeltaProfile, delta_eval, infer_delta

__all__ = [
    "CrossCheck",
    "DeltaProfile",
    "KoszulCertificate",
    "LevelVerdict",
    "betti_levels",
    "certify_algebra",
    "certify_delta_koszul",
    "check_criteria",
    "criteria_level",
    "cross_check_betti_criteria",
    "delta_eval",
    "generation_check",
    "infer_delta",
]
