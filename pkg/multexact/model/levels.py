"""
Exact significance levels.

Levels are rationals; a null weight sum W over the common denominator D
satisfies the level-alpha condition iff W * alpha.denominator <= alpha.numerator * D.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Union

from ..exceptions import InputError

AlphaLike = Union[str, int, float, Decimal, Fraction]


def parse_alpha(value: AlphaLike, allow_zero: bool = True) -> Fraction:
    """Parse a level exactly: '0.025' and 0.025 both give 1/40."""
    try:
        if isinstance(value, Fraction):
            alpha = value
        elif isinstance(value, float):
            alpha = Fraction(repr(value))
        else:
            alpha = Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError(f"invalid significance level {value!r}") from None
    lower_ok = alpha >= 0 if allow_zero else alpha > 0
    if not lower_ok or alpha > 1:
        raise InputError(f"significance level {value!r} outside the allowed range")
    return alpha


def within_level(weight: int, total: int, alpha: Fraction) -> bool:
    return weight * alpha.denominator <= alpha.numerator * total


def level_budget(total: int, alpha: Fraction) -> int:
    """Largest integer weight W with W / total <= alpha."""
    return (alpha.numerator * total) // alpha.denominator
