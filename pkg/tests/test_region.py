"""
Tests for rejection regions: dominance, validity, objectives and p-values.
"""

from __future__ import annotations

from fractions import Fraction

import pytest

from multexact.dist import OddsVector, joint_alt_distribution, joint_null_distribution
from multexact.exceptions import InputError
from multexact.model import MarginVector
from multexact.region import (
    ObjectiveKind,
    RejectionRegion,
    dominance,
    evaluate,
    is_valid,
    region_p_value,
)


@pytest.fixture()
def toy(toy_margins):
    return joint_null_distribution(toy_margins)


def _points(dist, mask):
    return {dist.points[i].t for i in range(dist.size) if mask >> i & 1}


class TestDominance:
    def test_toy_partial_order(self, toy):
        dom = dominance(toy)
        up = {toy.points[i].t: _points(toy, dom.up_masks[i]) for i in range(toy.size)}
        assert up[(1, 1)] == {(2, 2), (2, 1), (1, 2), (1, 1)}
        assert up[(2, 1)] == {(2, 1), (2, 2)}
        assert up[(2, 2)] == {(2, 2)}

    def test_up_down_are_transposed(self, example_margins):
        dist = joint_null_distribution(example_margins)
        dom = dominance(dist)
        for i in range(0, dist.size, 17):
            for j in dom.up_set(i):
                assert i in dom.down_set(j)

    def test_single_endpoint_is_total_order(self):
        dist = joint_null_distribution(MarginVector((4, 3), 3, 4))
        dom = dominance(dist)
        for i, p in enumerate(dist.points):
            assert _points(dist, dom.up_masks[i]) == {q.t for q in dist.points if q.t >= p.t}

    def test_single_point_support(self):
        dist = joint_null_distribution(MarginVector((2, 0), 1, 1))
        dom = dominance(dist)
        assert dist.size == 1
        assert dom.up_set(0) == dom.down_set(0) == [0]


class TestValidity:
    def test_empty_region_valid(self, toy):
        assert is_valid(RejectionRegion.empty(toy), Fraction(0)).valid

    def test_full_support_valid_at_one(self, toy):
        region = RejectionRegion.from_indices(toy, range(toy.size))
        assert is_valid(region, Fraction(1)).valid

    def test_missing_dominating_point(self, toy):
        report = is_valid(RejectionRegion.from_points(toy, [(2, 1)]), Fraction(1))
        assert not report.valid
        assert report.level_ok
        assert report.missing == [((2, 1), (2, 2))]

    def test_level_violation(self, toy):
        region = RejectionRegion.from_points(toy, [(2, 2), (2, 1)])
        report = is_valid(region, Fraction(3, 10))
        assert report.up_closed
        assert not report.level_ok
        assert report.level == Fraction(1, 2)


class TestEvaluate:
    def test_empty_region(self, toy_margins):
        dist = joint_alt_distribution(toy_margins, OddsVector((2.0, 1.5, 1.5, 1.0)))
        region = RejectionRegion.empty(dist)
        assert evaluate(region, "alpha") == 0
        assert evaluate(region, "area") == 0
        assert evaluate(region, "power") == 0

    def test_full_support(self, toy_margins):
        dist = joint_alt_distribution(toy_margins, OddsVector((2.0, 1.5, 1.5, 1.0)))
        region = RejectionRegion.from_indices(dist, range(dist.size))
        assert evaluate(region, ObjectiveKind.ALPHA) == 1
        assert evaluate(region, ObjectiveKind.AREA) == dist.size
        assert evaluate(region, ObjectiveKind.POWER) == pytest.approx(1.0)

    def test_power_needs_alternative(self, toy):
        with pytest.raises(InputError):
            evaluate(RejectionRegion.empty(toy), "power")

    def test_level_is_exact(self, toy):
        region = RejectionRegion.from_points(toy, [(2, 2), (2, 1), (1, 2)])
        assert evaluate(region, "alpha") == Fraction(5, 6)

    def test_dump_has_exact_level(self, toy):
        out = RejectionRegion.from_points(toy, [(2, 2)]).dump()
        assert out["members"] == [[2, 2]]
        assert (out["level_num"], out["level_den"]) == ("1", "6")


class TestRegionPValue:
    def test_shrinking_full_region(self, toy):
        full = RejectionRegion.from_indices(toy, range(toy.size))
        p = {t: region_p_value(full, t).p for t in [(1, 1), (2, 1), (1, 2), (2, 2)]}
        assert p == {
            (1, 1): Fraction(1),
            (2, 1): Fraction(5, 6),
            (1, 2): Fraction(1, 2),
            (2, 2): Fraction(1, 6),
        }

    def test_p_within_region_level(self, toy):
        region = RejectionRegion.from_points(toy, [(2, 2), (2, 1)])
        res = region_p_value(region, (2, 2))
        assert res.observed_in_region
        assert res.p <= region.level

    def test_growing_from_empty(self, toy):
        empty = RejectionRegion.empty(toy)
        res = region_p_value(empty, (2, 1))
        assert not res.observed_in_region
        assert res.p == Fraction(1, 2)

    def test_grown_p_below_alpha_is_flagged(self, toy):
        res = region_p_value(RejectionRegion.empty(toy), (2, 2))
        assert res.p == Fraction(1, 6)
        assert res.inconsistent_at(Fraction(3, 10))
        assert not res.inconsistent_at(Fraction(1, 10))

    def test_monotone_in_observation(self, example_margins):
        dist = joint_null_distribution(example_margins)
        region = RejectionRegion.from_predicate(dist, lambda t: t[0] >= 91 or t[1] >= 86)
        base = region_p_value(region, (92, 84)).p
        assert region_p_value(region, (93, 84)).p <= base
        assert region_p_value(region, (92, 85)).p <= base

    def test_observation_outside_support(self, toy):
        with pytest.raises(InputError):
            region_p_value(RejectionRegion.empty(toy), (0, 0))
