from .categories import OutcomeCategory, categories, pattern_matrix
from .levels import level_budget, parse_alpha, within_level
from .ingest import ingest_subjects, load_table, table_from_dict
from .table import (
    CellProbabilities,
    CrossTable,
    MarginVector,
    StatisticVector,
    collapse_cells,
    collapse_table,
    margins,
    normalize_subset,
    project,
    restrict_margins,
)

__all__ = [
    "CellProbabilities",
    "CrossTable",
    "MarginVector",
    "OutcomeCategory",
    "StatisticVector",
    "categories",
    "collapse_cells",
    "collapse_table",
    "ingest_subjects",
    "level_budget",
    "load_table",
    "margins",
    "normalize_subset",
    "parse_alpha",
    "pattern_matrix",
    "project",
    "restrict_margins",
    "table_from_dict",
    "within_level",
]
