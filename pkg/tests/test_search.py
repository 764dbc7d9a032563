"""
Tests for region construction: branch-and-bound, preprocessing, the
small-probability split, the greedy algorithm and LP export.

The brute-force oracle enumerates every subset of a small support.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from multexact.closed import AltSpec, fisher_forbidden_block
from multexact.dist import OddsVector, joint_alt_distribution, joint_null_distribution
from multexact.exceptions import InputError
from multexact.model import MarginVector
from multexact.region import Objective, RejectionRegion, evaluate, is_valid
from multexact.search import (
    branch_and_bound,
    export_ilp,
    greedy_region,
    preprocess,
    small_prob_split,
)

SMALL = MarginVector((2, 2, 1, 1), 3, 3)
ODDS = OddsVector((2.0, 1.5, 1.5, 1.0))
EXAMPLE_ALT = AltSpec((0.9, 0.9), (0.75, 0.75), 0.0)


def up_closed_regions(dist, alpha):
    """Every up-closed level-alpha subset of the support, by exhaustive enumeration."""
    pts = [p.t for p in dist.points]
    above = [
        [j for j, u in enumerate(pts) if j != i and all(a >= b for a, b in zip(u, t))]
        for i, t in enumerate(pts)
    ]
    out = []
    for mask in range(1 << len(pts)):
        members = [i for i in range(len(pts)) if mask >> i & 1]
        if any(not mask >> j & 1 for i in members for j in above[i]):
            continue
        if Fraction(sum(dist.points[i].null_weight for i in members), dist.total_weight) > alpha:
            continue
        out.append(RejectionRegion.from_indices(dist, members))
    return out


def oracle_best(dist, alpha, chain):
    return max(tuple(evaluate(r, k) for k in chain) for r in up_closed_regions(dist, alpha))


@pytest.fixture(scope="module")
def small_alt():
    return joint_alt_distribution(SMALL, ODDS)


@pytest.fixture(scope="module")
def example_null():
    return joint_null_distribution(MarginVector((137, 25, 11, 2), 94, 81))


class TestBranchAndBound:
    def test_toy_area_optimum(self, toy_margins):
        dist = joint_null_distribution(toy_margins)
        res = branch_and_bound(dist, Objective.parse("area"), Fraction(3, 10))
        assert res.region.points == [(2, 2)]
        assert res.confirmed_optimal

    @pytest.mark.parametrize("alpha", [Fraction(1, 20), Fraction(1, 10), Fraction(1, 4)])
    @pytest.mark.parametrize("kind", ["alpha", "area", "power"])
    def test_matches_exhaustive_enumeration(self, small_alt, alpha, kind):
        res = branch_and_bound(small_alt, Objective.parse(kind), alpha)
        assert res.confirmed_optimal
        assert is_valid(res.region, alpha).valid
        best = oracle_best(small_alt, alpha, [kind])[0]
        assert evaluate(res.region, kind) == pytest.approx(best)

    @pytest.mark.parametrize("chain", [["alpha", "area"], ["area", "power"], ["power", "alpha"]])
    def test_lexicographic_matches_enumeration(self, small_alt, chain):
        alpha = Fraction(1, 5)
        res = branch_and_bound(small_alt, Objective.parse(chain[0], chain[1:]), alpha)
        expected = oracle_best(small_alt, alpha, chain)
        for got, want in zip(res.objective_value, expected):
            assert got == pytest.approx(want)

    def test_forbidden_points_stay_out(self, small_alt):
        forbidden = [small_alt.index_of(small_alt.points[-1].t)]
        res = branch_and_bound(small_alt, Objective.parse("area"), Fraction(1, 2), forbidden)
        assert not res.region.mask >> forbidden[0] & 1
        assert is_valid(res.region, Fraction(1, 2)).valid

    def test_power_needs_alternative(self, toy_margins):
        with pytest.raises(InputError):
            branch_and_bound(joint_null_distribution(toy_margins), Objective.parse("power"),
                             Fraction(1, 4))

    def test_iteration_cap_returns_feasible_region(self, example_null):
        alpha = Fraction(1, 40)
        res = branch_and_bound(example_null, Objective.parse("area"), alpha, max_iter=1)
        assert not res.confirmed_optimal
        assert is_valid(res.region, alpha).valid

    def test_example_area_optimum(self, example_null):
        res = branch_and_bound(example_null, Objective.parse("area"), Fraction(1, 40))
        assert res.confirmed_optimal
        assert res.region.size == 191
        assert round(100 * float(res.region.level), 2) == 2.48


class TestPreprocessing:
    def test_example_sizes(self, example_null):
        assert preprocess(example_null, Fraction(1, 40)).sizes == (386, 212, 159)

    def test_example_sizes_with_consonance(self, example_null):
        alpha = Fraction(1, 40)
        forbidden = [example_null.index_of(t) for t in fisher_forbidden_block(example_null, alpha)]
        assert preprocess(example_null, alpha, forbidden).sizes == (386, 206, 123)

    def test_forced_points_fit_the_budget(self, example_null):
        pre = preprocess(example_null, Fraction(1, 40))
        assert 0 <= pre.residual_budget <= pre.budget
        assert pre.forced & pre.v2 == 0
        assert pre.forced & ~pre.v1 == 0

    def test_forced_points_belong_to_the_optimum(self, small_alt):
        alpha = Fraction(1, 4)
        pre = preprocess(small_alt, alpha)
        res = branch_and_bound(small_alt, Objective.parse("area"), alpha)
        assert res.region.mask & pre.forced == pre.forced


class TestSmallProbabilitySplit:
    def test_valid_and_not_better_than_optimum(self, small_alt):
        alpha = Fraction(1, 4)
        objective = Objective.parse("power")
        split = small_prob_split(small_alt, objective, alpha, c=0.05)
        exact = branch_and_bound(small_alt, objective, alpha)
        assert is_valid(split.region, alpha).valid
        assert split.objective_value[0] <= exact.objective_value[0] + 1e-12

    def test_zero_threshold_is_exact(self, small_alt):
        alpha = Fraction(1, 4)
        objective = Objective.parse("area")
        split = small_prob_split(small_alt, objective, alpha, c=1e-12)
        exact = branch_and_bound(small_alt, objective, alpha)
        assert split.region.size == exact.region.size


class TestGreedy:
    @pytest.mark.parametrize("operator", ["argmin", "argmax"])
    @pytest.mark.parametrize("kind", ["alpha", "area", "power"])
    def test_valid_and_maximal(self, small_alt, kind, operator):
        alpha = Fraction(1, 4)
        region = greedy_region(small_alt, kind, operator, alpha)
        assert is_valid(region, alpha).valid
        best = oracle_best(small_alt, alpha, [kind])[0]
        assert evaluate(region, kind) <= best + 1e-12

    def test_example_greedy(self):
        m = MarginVector((137, 25, 11, 2), 94, 81)
        dist = joint_alt_distribution(m, EXAMPLE_ALT.odds((0, 1)))
        region = greedy_region(dist, "alpha", "argmin", Fraction(1, 40))
        assert region.size == 187
        assert round(100 * float(region.level), 2) == 2.41
        assert round(100 * region.power, 1) == 84.3


class TestIlpExport:
    def test_toy_model_layout(self, toy_margins):
        dist = joint_null_distribution(toy_margins)
        text = export_ilp(dist, "area", Fraction(3, 10))
        lines = text.splitlines()
        assert lines[0].startswith("\\ ")
        assert "Maximize" in lines and "st" in lines and "bin" in lines
        assert lines[-1] == "End"
        assert " level: 2 x0 + 2 x1 + x2 + x3 <= 1" in lines

    def test_deterministic(self, small_alt):
        a = export_ilp(small_alt, "power", Fraction(1, 4), integer_form=False)
        b = export_ilp(small_alt, "power", Fraction(1, 4), integer_form=False)
        assert a == b

    def test_preprocessed_example_variable_count(self, example_null):
        text = export_ilp(example_null, "area", Fraction(1, 40), use_preprocessing=True)
        assert "model variables 159" in text

    def test_lexicographic_rejected(self, toy_margins):
        with pytest.raises(InputError):
            export_ilp(joint_null_distribution(toy_margins), Objective.parse("alpha", ["area"]),
                       Fraction(1, 4))
