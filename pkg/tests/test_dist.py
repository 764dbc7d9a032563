"""
Tests for the exact joint and marginal null/alternative distributions.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from scipy.stats import hypergeom

from multexact.dist import (
    OddsVector,
    enumerate_support,
    fisher_p,
    fisher_tests,
    joint_alt_distribution,
    joint_null_distribution,
    marginal_tail,
    marginal_tail_table,
    marginalize,
)
from multexact.exceptions import InputError, SupportTooLarge
from multexact.model import MarginVector, categories, project


def permutation_counts(m: MarginVector, subset=None):
    """Statistic vectors over every assignment of n_trt labelled subjects."""
    k = m.k
    cats = [c.position for c in categories(k)]
    subjects = [pos for pos, count in zip(cats, m.m) for _ in range(count)]
    counter = Counter()
    for chosen in combinations(range(len(subjects)), m.n_trt):
        y = [0] * len(m.m)
        for s in chosen:
            y[subjects[s]] += 1
        counter[project(y, subset)] += 1
    return counter


ORACLE_MARGINS = [
    MarginVector((2, 1, 1, 0), 2, 2),
    MarginVector((3, 2, 1, 2), 4, 4),
    MarginVector((1, 2, 2, 1), 3, 3),
    MarginVector((0, 4, 3, 1), 5, 3),
    MarginVector((1, 1, 2, 0, 1, 2, 1, 1), 4, 5),
    MarginVector((4, 3), 3, 4),
]


class TestJointNull:
    def test_toy_support(self, toy_margins):
        dist = joint_null_distribution(toy_margins)
        assert [(p.t, p.null_weight) for p in dist.points] == [
            ((2, 1), 2), ((1, 2), 2), ((2, 2), 1), ((1, 1), 1),
        ]
        assert dist.total_weight == 6

    @pytest.mark.parametrize("m", ORACLE_MARGINS, ids=lambda m: str(m.m))
    def test_matches_permutation_enumeration(self, m):
        dist = joint_null_distribution(m)
        assert {p.t: p.null_weight for p in dist.points} == dict(permutation_counts(m))

    @pytest.mark.parametrize("m", ORACLE_MARGINS[1:4], ids=lambda m: str(m.m))
    def test_subset_matches_permutation_enumeration(self, m):
        dist = joint_null_distribution(m, [1])
        assert {p.t: p.null_weight for p in dist.points} == dict(permutation_counts(m, [1]))

    def test_weights_sum_to_binomial(self, example_margins):
        dist = joint_null_distribution(example_margins)
        assert sum(dist.weights) == comb(175, 94) == dist.total_weight

    def test_example_support_size(self, example_margins):
        assert joint_null_distribution(example_margins).size == 386

    def test_canonical_order(self, example_margins):
        dist = joint_null_distribution(example_margins)
        keys = [(-p.null_weight, tuple(-x for x in p.t)) for p in dist.points]
        assert keys == sorted(keys)

    def test_marginalize_equals_restricted(self, example_margins):
        full = joint_null_distribution(example_margins)
        direct = joint_null_distribution(example_margins, [1])
        projected = marginalize(full, [1])
        assert [(p.t, p.null_weight) for p in projected.points] == [
            (p.t, p.null_weight) for p in direct.points
        ]

    def test_support_cap(self, example_margins):
        with pytest.raises(SupportTooLarge):
            joint_null_distribution(example_margins, limit=10)

    def test_enumerate_support_order(self, toy_margins):
        assert enumerate_support(toy_margins) == [
            (2, 0, 0, 0), (1, 1, 0, 0), (1, 0, 1, 0), (0, 1, 1, 0),
        ]

    def test_index_lookup(self, toy_margins):
        dist = joint_null_distribution(toy_margins)
        assert dist.index_of((2, 2)) == 2
        assert (0, 0) not in dist
        with pytest.raises(InputError):
            dist.index_of((0, 0))


class TestJointAlternative:
    def test_unit_odds_reproduce_null(self, example_margins):
        dist = joint_alt_distribution(example_margins, OddsVector.null(4))
        for p in dist.points:
            assert p.alt_mass == pytest.approx(p.null_weight / dist.total_weight, rel=1e-9)

    def test_masses_sum_to_one(self, example_margins):
        odds = OddsVector((3.0, 1.5, 0.5, 0.25))
        for J in ([0, 1], [0], [1]):
            dist = joint_alt_distribution(example_margins, odds, J)
            assert float(dist.alt_masses.sum()) == pytest.approx(1.0, abs=1e-12)

    def test_collapsed_odds_on_single_endpoint(self, toy_margins):
        # one endpoint: Fisher's noncentral hypergeometric law with odds ratio 2
        dist = joint_alt_distribution(toy_margins, OddsVector((2.0, 1.0)), [0])
        raw = {(1,): comb(3, 1) * comb(1, 1) * 2, (2,): comb(3, 2) * comb(1, 0) * 4}
        total = sum(raw.values())
        for p in dist.points:
            assert p.alt_mass == pytest.approx(raw[p.t] / total)

    def test_larger_odds_shift_mass_upwards(self, example_margins):
        null = joint_alt_distribution(example_margins, OddsVector.null(4))
        alt = joint_alt_distribution(example_margins, OddsVector((4.0, 2.0, 2.0, 1.0)))
        mean = [sum(p.t[0] * p.alt_mass for p in d.points) for d in (null, alt)]
        assert mean[1] > mean[0]

    def test_wrong_length(self, toy_margins):
        with pytest.raises(InputError):
            joint_alt_distribution(toy_margins, OddsVector((1.0, 1.0, 1.0)))

    def test_nonpositive_odds(self):
        with pytest.raises(InputError):
            OddsVector((1.0, 0.0))


class TestMarginal:
    @pytest.mark.parametrize("endpoint", [0, 1])
    def test_matches_scipy_hypergeom(self, example_margins, endpoint):
        tail = marginal_tail_table(example_margins, endpoint)
        K = example_margins.successes(endpoint)
        for c in range(tail.lo, tail.hi + 1):
            expected = hypergeom.sf(c - 1, example_margins.N, K, example_margins.n_trt)
            assert float(tail.sf(c)) == pytest.approx(expected, rel=1e-6)

    def test_support_edges(self, example_margins):
        tail = marginal_tail_table(example_margins, 0)
        assert marginal_tail(example_margins, 0, tail.lo) == 1
        assert marginal_tail(example_margins, 0, tail.hi + 1) == 0

    def test_fisher_critical_values(self, example_margins):
        alpha = Fraction(1, 40)
        assert marginal_tail_table(example_margins, 0).critical_value(alpha) == 91
        assert marginal_tail_table(example_margins, 1).critical_value(alpha) == 85

    def test_fisher_p_values(self, example_margins):
        assert round(float(fisher_p(example_margins, 0, 93)), 4) == 0.0005
        assert round(float(fisher_p(example_margins, 1, 81)), 4) == 0.3361

    def test_fisher_p_outside_support(self, toy_margins):
        with pytest.raises(InputError, match="outside the support"):
            fisher_p(toy_margins, 0, 0)

    def test_fisher_tests_rows(self, example_margins):
        rows = fisher_tests(example_margins, (93, 81), Fraction(1, 40))
        assert [r["critical_value"] for r in rows] == [91, 85]
        assert Fraction(int(rows[0]["p_num"]), int(rows[0]["p_den"])) == fisher_p(
            example_margins, 0, 93
        )
