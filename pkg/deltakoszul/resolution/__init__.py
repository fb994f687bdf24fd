from deltakoszul.resolution.betti import BettiTable, betti_table
from deltakoszul.resolution.minimal import (
    BettiRow,
    ProjectiveDimension,
    Resolution,
    ResolutionStep,
    betti_row,
    minimal_resolution,
    projective_dimension,
    verify_resolution,
)

__all__ = [
    "BettiRow",
    "BettiTable",
    "ProjectiveDimension",
    "Resolution",
    "ResolutionStep",
    "betti_row",
    "betti_table",
    "minimal_resolution",
    "projective_dimension",
    "verify_resolution",
]
