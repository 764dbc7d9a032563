"""
Binary integer programme export in LP file format.

    max  w'x
    st   a'x <= alpha                     (level row)
         |M_i| x_i - sum_{j in M_i} x_j <= 0   for every i with nonempty M_i
    x binary

M_i is the strict up-set of point i among the model variables. The level row is
written in integer-weight form by default (null weights over the common
denominator, right-hand side rounded down); the decimal form uses 18
significant digits. Output is deterministic for a given model.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..dist import JointDistribution
from ..exceptions import InputError
from ..region import Objective, ObjectiveKind, dominance, iter_bits, point_values
from .preprocess import preprocess

_TERMS_PER_LINE = 8

Coefficient = Union[int, Fraction, float]


def format_coefficient(value: Coefficient) -> str:
    if isinstance(value, int):
        return str(value)
    with localcontext() as ctx:
        ctx.prec = 18
        if isinstance(value, Fraction):
            dec = Decimal(value.numerator) / Decimal(value.denominator)
        else:
            dec = +Decimal(value)
        if dec == dec.to_integral_value():
            return str(int(dec))
        return f"{dec:.17e}"


class LpWriter:
    """Accumulates an LP-format model line by line."""

    def __init__(self, title: str):
        self._lines: List[str] = [f"\\ {title}"]
        self._section: Optional[str] = None

    def comment(self, text: str) -> None:
        self._lines.append(f"\\ {text}")

    def _enter(self, section: str) -> None:
        if self._section != section:
            self._lines.append(section)
            self._section = section

    def _expression(self, terms: Sequence[Tuple[Coefficient, str]]) -> List[str]:
        parts = []
        for n, (coef, var) in enumerate(terms):
            text = format_coefficient(abs(coef))
            sign = "-" if coef < 0 else "+"
            if text == "1":
                body = var
            else:
                body = f"{text} {var}"
            if n == 0:
                parts.append(f"- {body}" if sign == "-" else body)
            else:
                parts.append(f"{sign} {body}")
        if not parts:
            parts.append("0 x_empty")
        lines = []
        for start in range(0, len(parts), _TERMS_PER_LINE):
            lines.append(" ".join(parts[start:start + _TERMS_PER_LINE]))
        return lines

    def objective(self, name: str, terms: Sequence[Tuple[Coefficient, str]]) -> None:
        self._enter("Maximize")
        self._emit(name, terms, "")

    def constraint(
        self, name: str, terms: Sequence[Tuple[Coefficient, str]], sense: str, rhs: Coefficient
    ) -> None:
        self._enter("st")
        self._emit(name, terms, f" {sense} {format_coefficient(rhs)}")

    def _emit(self, name: str, terms, tail: str) -> None:
        body = self._expression(terms)
        body[-1] += tail
        self._lines.append(f" {name}: {body[0]}")
        for cont in body[1:]:
            self._lines.append(f"   {cont}")

    def binaries(self, names: Iterable[str]) -> None:
        self._enter("bin")
        names = list(names)
        for start in range(0, len(names), 10):
            self._lines.append(" " + " ".join(names[start:start + 10]))

    def render(self) -> str:
        return "\n".join(self._lines + ["End"]) + "\n"


def export_ilp(
    dist: JointDistribution,
    objective: Union[Objective, ObjectiveKind, str],
    alpha: Fraction,
    forbidden: Optional[Iterable[int]] = None,
    use_preprocessing: bool = False,
    integer_form: bool = True,
) -> str:
    if isinstance(objective, Objective):
        if objective.tail:
            raise InputError("a lexicographic objective is not a single linear objective")
        kind = objective.kind
    else:
        kind = ObjectiveKind(objective)
    weights_obj = point_values(kind, dist)

    pre = preprocess(dist, alpha, forbidden, steps=2 if use_preprocessing else 0)
    variables = list(iter_bits(pre.v2))
    dom = dominance(dist)
    forced_weight = sum(dist.weights[i] for i in iter_bits(pre.forced))

    def name(i: int) -> str:
        return f"x{i}"

    lp = LpWriter(f"multexact rejection-region model, objective {kind.value}")
    lp.comment(f"support points {dist.size}, model variables {len(variables)}, "
               f"forced points {pre.forced.bit_count()}")
    lp.comment(f"alpha = {alpha}, total weight = {dist.total_weight}")
    for i in variables:
        lp.comment(f"{name(i)} = t{dist.points[i].t}")

    lp.objective("obj", [(weights_obj[i], name(i)) for i in variables])
    if integer_form:
        lp.constraint("level", [(dist.weights[i], name(i)) for i in variables], "<=",
                      pre.residual_budget)
    else:
        total = dist.total_weight
        lp.constraint(
            "level",
            [(Fraction(dist.weights[i], total), name(i)) for i in variables],
            "<=",
            alpha - Fraction(forced_weight, total),
        )
    for i in variables:
        upper = [j for j in iter_bits(dom.strict_up(i) & pre.v2)]
        if not upper:
            continue
        terms: List[Tuple[Coefficient, str]] = [(len(upper), name(i))]
        terms += [(-1, name(j)) for j in upper]
        lp.constraint(f"mono_{i}", terms, "<=", 0)
    lp.binaries(name(i) for i in variables)
    return lp.render()
