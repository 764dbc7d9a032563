from .lattice import DominanceStructure, dominance, iter_bits, mask_of
from .objective import Objective, ObjectiveKind, point_values
from .region import (
    RegionPValue,
    RejectionRegion,
    ValidityReport,
    evaluate,
    is_valid,
    region_p_value,
)

__all__ = [
    "DominanceStructure",
    "Objective",
    "ObjectiveKind",
    "RegionPValue",
    "RejectionRegion",
    "ValidityReport",
    "dominance",
    "evaluate",
    "is_valid",
    "iter_bits",
    "mask_of",
    "point_values",
    "region_p_value",
]
