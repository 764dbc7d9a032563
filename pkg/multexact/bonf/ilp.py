"""
Weighted-Bonferroni boundary selection as a binary programme (LP file format).

One indicator per endpoint and candidate boundary (plus one for "untested");
each endpoint picks exactly one, and the selected tail probabilities must fit
the level.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Tuple

from ..model import MarginVector
from ..model.levels import level_budget
from ..search.ilp import Coefficient, LpWriter
from .boundaries import ALPHA_SUM, BonfObjective, BonfObjectiveKind, marginal_tails


def export_bonf_ilp(
    m: MarginVector,
    objective: BonfObjective = ALPHA_SUM,
    alpha: Fraction = Fraction(1, 40),
    subset=None,
    integer_form: bool = True,
) -> str:
    J, tails = marginal_tails(m, subset)
    total = tails[0].total
    lp = LpWriter(f"multexact weighted Bonferroni model, objective {objective.kind.value}")
    lp.comment(f"endpoints {list(J)}, alpha = {alpha}, total weight = {total}")

    columns: List[List[Tuple[str, object, int]]] = []
    for pos, (endpoint, tail) in enumerate(zip(J, tails)):
        col = [(f"c{endpoint}_inf", None, 0)]
        col += [(f"c{endpoint}_{c}", c, tail.weight(c)) for c in tail.candidates(alpha)]
        columns.append(col)
        lp.comment(f"endpoint {endpoint}: {len(col)} indicators")

    obj_terms: List[Tuple[Coefficient, str]] = []
    for pos, (tail, col) in enumerate(zip(tails, columns)):
        for name, c, w in col:
            if objective.kind is BonfObjectiveKind.ALPHA_SUM:
                coef: Coefficient = w if integer_form else Fraction(w, total)
            else:
                coef = objective.term(pos, tail, c)
            obj_terms.append((coef, name))
    lp.objective("obj", obj_terms)

    for endpoint, col in zip(J, columns):
        lp.constraint(f"onehot_{endpoint}", [(1, name) for name, _, _ in col], "=", 1)
    if integer_form:
        lp.constraint(
            "level",
            [(w, name) for col in columns for name, _, w in col],
            "<=",
            level_budget(total, alpha),
        )
    else:
        lp.constraint(
            "level",
            [(Fraction(w, total), name) for col in columns for name, _, w in col],
            "<=",
            alpha,
        )
    lp.binaries(name for col in columns for name, _, _ in col)
    return lp.render()
