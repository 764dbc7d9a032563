"""
Tests for the Bonferroni family and minP.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import pytest

from multexact.bonf import (
    ALPHA_SUM,
    boundary_region,
    export_bonf_ilp,
    greedy_boundaries,
    hkt,
    marginal_tails,
    minp_p_value,
    minp_region,
    minp_threshold,
    optimize_boundaries,
    power_sum_objective,
    tarone,
    unweighted,
    westfall_troendle,
)
from multexact.closed import AltSpec
from multexact.dist import joint_alt_distribution, joint_null_distribution, marginal_tail_table
from multexact.exceptions import InputError
from multexact.model import MarginVector
from multexact.region import is_valid

ALPHA = Fraction(1, 40)
EXAMPLE = MarginVector((137, 25, 11, 2), 94, 81)
EXAMPLE_ALT = AltSpec((0.9, 0.9), (0.75, 0.75), 0.0)
# endpoint 0 has fine tails, endpoint 1 (one success in ten) can never reach 0.2
UNEVEN = MarginVector((1, 4, 0, 5), 5, 5)


@pytest.fixture(scope="module")
def example_alt_dist():
    return joint_alt_distribution(EXAMPLE, EXAMPLE_ALT.odds((0, 1)))


def _summary(boundaries, dist):
    region = boundary_region(boundaries, dist)
    return boundaries.c, round(100 * float(region.level), 2), region.size, region


class TestClassicalBoundaries:
    def test_unweighted_example(self, example_alt_dist):
        c, level, size, _ = _summary(unweighted(EXAMPLE, ALPHA), example_alt_dist)
        assert (c, level, size) == ((92, 86), 0.98, 177)

    def test_hkt_matches_unweighted_on_example(self):
        assert hkt(EXAMPLE, ALPHA).c == unweighted(EXAMPLE, ALPHA).c == (92, 86)

    def test_single_endpoint_is_fisher(self):
        m = MarginVector((4, 3), 3, 4)
        alpha = Fraction(1, 5)
        assert unweighted(m, alpha).c == (marginal_tail_table(m, 0).critical_value(alpha),)

    def test_unattainable_share_is_untested(self):
        b = unweighted(UNEVEN, Fraction(1, 5))
        assert b.c == (5, None)
        assert b.tested == (True, False)
        assert b.dump()["boundaries"][1]["c"] == "untested"

    def test_tarone_drops_untestable_endpoint(self):
        assert tarone(UNEVEN, Fraction(1, 5)).c == (4, None)

    def test_hkt_strictly_dominates_unweighted(self):
        assert hkt(UNEVEN, Fraction(1, 5)).c == (4, None)

    def test_nothing_testable(self):
        assert hkt(UNEVEN, Fraction(1, 1000)).c == (None, None)

    def test_westfall_troendle_common_threshold(self):
        b = westfall_troendle(EXAMPLE, ALPHA)
        c = b.c[0]
        assert b.c == (c, c)
        _, tails = marginal_tails(EXAMPLE)
        assert sum(t.sf(c) for t in tails) <= ALPHA < sum(t.sf(c - 1) for t in tails)

    def test_westfall_troendle_example(self, example_alt_dist):
        c, level, _, _ = _summary(westfall_troendle(EXAMPLE, ALPHA), example_alt_dist)
        assert (c, level) == ((91, 91), 2.12)

    def test_westfall_troendle_symmetric_margins(self):
        m = MarginVector((3, 2, 2, 3), 5, 5)
        assert westfall_troendle(m, Fraction(1, 10)).c == unweighted(m, Fraction(1, 10)).c

    @pytest.mark.parametrize("m", [EXAMPLE, UNEVEN, MarginVector((3, 2, 2, 3), 5, 5)])
    @pytest.mark.parametrize("alpha", [Fraction(1, 40), Fraction(1, 10), Fraction(1, 5)])
    def test_every_constructor_within_level(self, m, alpha):
        hk = hkt(m, alpha)
        uw = unweighted(m, alpha)
        for b in (uw, tarone(m, alpha), hk, westfall_troendle(m, alpha),
                  optimize_boundaries(m, ALPHA_SUM, alpha), greedy_boundaries(m, alpha)):
            assert b.level_bound <= alpha
            assert b.within(alpha)
        for a, b in zip(hk.c, uw.c):
            assert b is None or (a is not None and a <= b)


class TestOptimizedBoundaries:
    def test_alpha_sum_example(self, example_alt_dist):
        c, level, size, _ = _summary(optimize_boundaries(EXAMPLE, ALPHA_SUM, ALPHA),
                                     example_alt_dist)
        assert (c, level, size) == ((91, 87), 2.27, 186)

    def test_power_sum_example(self, example_alt_dist):
        objective = power_sum_objective(EXAMPLE, EXAMPLE_ALT.p_trt, EXAMPLE_ALT.p_ctr)
        c, level, size, region = _summary(optimize_boundaries(EXAMPLE, objective, ALPHA),
                                          example_alt_dist)
        assert (c, level, size) == ((92, 85), 2.17, 188)
        assert round(100 * region.power, 1) == 74.1

    def test_greedy_example(self):
        assert greedy_boundaries(EXAMPLE, ALPHA).c == (92, 85)

    @pytest.mark.parametrize("m", [EXAMPLE, UNEVEN, MarginVector((3, 2, 2, 3), 5, 5)])
    def test_alpha_sum_is_maximal(self, m):
        alpha = Fraction(1, 10)
        best = optimize_boundaries(m, ALPHA_SUM, alpha).level_bound
        for b in (unweighted(m, alpha), hkt(m, alpha), westfall_troendle(m, alpha),
                  greedy_boundaries(m, alpha)):
            assert b.level_bound <= best

    def test_alpha_sum_matches_exhaustive_grid(self):
        m = MarginVector((3, 2, 2, 3), 5, 5)
        alpha = Fraction(1, 10)
        _, tails = marginal_tails(m)
        options = [[None] + list(range(t.lo, t.hi + 1)) for t in tails]
        best = max(
            sum((t.sf(c) for t, c in zip(tails, cs)), Fraction(0))
            for cs in product(*options)
            if sum((t.sf(c) for t, c in zip(tails, cs)), Fraction(0)) <= alpha
        )
        assert optimize_boundaries(m, ALPHA_SUM, alpha).level_bound == best

    def test_caps_are_respected(self):
        b = optimize_boundaries(EXAMPLE, ALPHA_SUM, ALPHA, upper_limits=[92, None])
        assert b.c[0] is not None and b.c[0] <= 92
        assert b.level_bound <= ALPHA

    def test_cap_length_checked(self):
        with pytest.raises(InputError):
            optimize_boundaries(EXAMPLE, ALPHA_SUM, ALPHA, upper_limits=[92])

    def test_greedy_with_tiny_alpha(self):
        assert greedy_boundaries(UNEVEN, Fraction(1, 1000)).c == (None, None)

    def test_induced_region_respects_bonferroni(self, example_alt_dist):
        for b in (unweighted(EXAMPLE, ALPHA), optimize_boundaries(EXAMPLE, ALPHA_SUM, ALPHA)):
            region = boundary_region(b, example_alt_dist)
            assert region.level <= b.level_bound
            assert is_valid(region, ALPHA).valid

    def test_region_needs_matching_subset(self):
        dist = joint_null_distribution(EXAMPLE, [0])
        with pytest.raises(InputError):
            boundary_region(unweighted(EXAMPLE, ALPHA), dist)


class TestMinP:
    def test_example_region(self, example_alt_dist):
        region = minp_region(example_alt_dist, ALPHA)
        expected = boundary_region(greedy_boundaries(EXAMPLE, ALPHA), example_alt_dist)
        assert region.mask == expected.mask
        assert round(100 * float(region.level), 2) == 2.17
        assert round(100 * region.power, 1) == 74.1

    def test_single_endpoint_is_fisher(self):
        m = MarginVector((4, 3), 3, 4)
        alpha = Fraction(1, 5)
        dist = joint_null_distribution(m)
        c = marginal_tail_table(m, 0).critical_value(alpha)
        assert {t for (t,) in minp_region(dist, alpha).points} == {
            t for (t,) in (p.t for p in dist.points) if t >= c
        }

    def test_threshold_by_enumeration(self, toy_margins):
        dist = joint_null_distribution(toy_margins)
        tails = [marginal_tail_table(toy_margins, j) for j in range(2)]
        minp = {p.t: min(Fraction(t.weight(x), t.total) for t, x in zip(tails, p.t))
                for p in dist.points}
        alpha = Fraction(1, 2)
        attainable = sorted(set(minp.values()))
        expected = 0
        for q in attainable:
            mass = sum(dist.probability(i) for i, p in enumerate(dist.points) if minp[p.t] <= q)
            if mass <= alpha:
                expected = q
        assert minp_threshold(dist, alpha) == expected
        assert minp_region(dist, alpha).level <= alpha

    def test_p_value_of_extreme_point(self, toy_margins):
        dist = joint_null_distribution(toy_margins)
        assert minp_p_value(dist, (2, 2)) <= minp_p_value(dist, (1, 1)) == 1


class TestBonfIlp:
    def test_single_endpoint_layout(self):
        m = MarginVector((4, 3), 3, 4)
        text = export_bonf_ilp(m, ALPHA_SUM, Fraction(1, 5))
        assert text.count("onehot_") == 1
        tail = marginal_tail_table(m, 0)
        assert f"c0_{tail.critical_value(Fraction(1, 5))}" in text

    def test_example_variable_count(self):
        text = export_bonf_ilp(EXAMPLE, ALPHA_SUM, ALPHA)
        _, tails = marginal_tails(EXAMPLE)
        expected = sum(len(t.candidates(ALPHA)) + 1 for t in tails)
        section = text.split("\nbin\n", 1)[1].rsplit("End", 1)[0]
        assert len(section.split()) == expected
