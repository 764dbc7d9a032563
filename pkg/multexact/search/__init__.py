from .branch_bound import OptResult, SearchNode, branch_and_bound
from .greedy import GreedyOperator, greedy_region
from .ilp import LpWriter, export_ilp
from .preprocess import PreprocessResult, preprocess
from .small_prob import small_prob_split

__all__ = [
    "GreedyOperator",
    "LpWriter",
    "OptResult",
    "PreprocessResult",
    "SearchNode",
    "branch_and_bound",
    "export_ilp",
    "greedy_region",
    "preprocess",
    "small_prob_split",
]
