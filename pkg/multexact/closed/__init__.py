from .cache import RegionCache
from .construct import RegionReport, construct_region
from .consonance import (
    ConsonanceMode,
    ConsonanceSpec,
    consonance_forbidden_block,
    consonant_boundary_caps,
    fisher_forbidden_block,
)
from .methods import (
    AltSpec,
    LocalRule,
    MethodName,
    MethodSpec,
    boundaries_for,
    fisher_rule,
    region_rule,
)
from .procedure import (
    ClosedTestReport,
    ElementaryResult,
    SubsetResult,
    bonferroni_level_grid,
    apply_rules,
    boundary_p_values,
    closed_decisions,
    closed_rules,
    closed_subsets,
    closed_test,
    supersets_of,
)

__all__ = [
    "AltSpec",
    "ClosedTestReport",
    "ConsonanceMode",
    "ConsonanceSpec",
    "ElementaryResult",
    "LocalRule",
    "MethodName",
    "MethodSpec",
    "RegionCache",
    "RegionReport",
    "SubsetResult",
    "bonferroni_level_grid",
    "apply_rules",
    "boundaries_for",
    "boundary_p_values",
    "closed_decisions",
    "closed_rules",
    "closed_subsets",
    "closed_test",
    "consonance_forbidden_block",
    "construct_region",
    "consonant_boundary_caps",
    "fisher_forbidden_block",
    "fisher_rule",
    "region_rule",
    "supersets_of",
]
