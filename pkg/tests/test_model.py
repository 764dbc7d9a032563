"""
Tests for categories, tables, ingestion and exact significance levels.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from multexact.exceptions import InputError
from multexact.model import (
    CellProbabilities,
    CrossTable,
    MarginVector,
    categories,
    collapse_cells,
    collapse_table,
    ingest_subjects,
    level_budget,
    load_table,
    margins,
    parse_alpha,
    project,
    restrict_margins,
    table_from_dict,
    within_level,
)
from tests.conftest import DATA


def _subjects(table: CrossTable):
    labels = [c.pattern for c in categories(table.k)]
    rows = []
    for pattern, a, b in zip(labels, table.counts_trt, table.counts_ctr):
        rows += [("trt", pattern)] * a + [("ctr", pattern)] * b
    return rows


class TestCategories:
    def test_storage_order_for_two_endpoints(self):
        assert [c.label for c in categories(2)] == ["11", "10", "01", "00"]

    def test_index_pattern_bijection(self):
        cats = categories(3)
        assert sorted(c.index for c in cats) == list(range(8))
        assert len({c.pattern for c in cats}) == 8
        assert all(c.position == p for p, c in enumerate(cats))


class TestIngest:
    def test_example_subjects_reproduce_table(self, example_table):
        assert ingest_subjects(_subjects(example_table)) == example_table

    def test_order_invariance(self, example_table):
        rows = _subjects(example_table)
        random.Random(7).shuffle(rows)
        assert ingest_subjects(rows) == example_table

    def test_empty_input(self):
        with pytest.raises(InputError, match="empty input"):
            ingest_subjects([])

    def test_single_endpoint_all_successes(self):
        table = ingest_subjects([("trt", [1]), ("trt", [1]), ("ctr", [1]), ("ctr", [1])])
        assert table.counts_trt == (2, 0)
        assert table.counts_ctr == (2, 0)

    def test_mixed_k_rejected(self):
        with pytest.raises(InputError):
            ingest_subjects([("trt", [1, 0]), ("ctr", [1])])

    def test_unknown_label_rejected(self):
        with pytest.raises(InputError, match="unknown group label"):
            ingest_subjects([("trt", [1]), ("placebo", [0])])

    def test_endpoint_limit(self):
        with pytest.raises(InputError, match="endpoint limit"):
            ingest_subjects([("trt", [1] * 5), ("ctr", [0] * 5)], max_endpoints=4)

    def test_csv_file(self):
        table = load_table(DATA / "toy_subjects.csv")
        assert margins(table) == MarginVector((2, 1, 1, 0), 2, 2)

    def test_aggregated_json_file(self, example_table):
        assert load_table(DATA / "example_table1.json") == example_table

    def test_category_order_in_json_is_respected(self, example_table):
        data = json.loads((DATA / "example_table1.json").read_text())
        data["categories"] = list(reversed(data["categories"]))
        data["trt"] = list(reversed(data["trt"]))
        data["ctr"] = list(reversed(data["ctr"]))
        assert table_from_dict(data) == example_table

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError, match="no such file"):
            load_table(tmp_path / "absent.csv")


class TestMarginsAndProjection:
    def test_example_margins(self, example_table):
        m = margins(example_table)
        assert m.m == (137, 25, 11, 2)
        assert (m.n_trt, m.n_ctr) == (94, 81)

    def test_zero_control_column(self):
        table = CrossTable(k=1, counts_trt=(3, 1), counts_ctr=(0, 0))
        assert margins(table).m == (3, 1)

    def test_example_statistics(self, example_table):
        assert project(example_table.counts_trt) == (93, 81)

    def test_zero_vector(self):
        assert project((0, 0, 0, 0)) == (0, 0)

    def test_all_success_counts_toward_both(self):
        assert project((2, 0, 0, 0)) == (2, 2)

    def test_subset_out_of_range(self):
        with pytest.raises(InputError):
            project((1, 0, 0, 0), [2])
        with pytest.raises(InputError):
            project((1, 0, 0, 0), [])

    def test_projection_is_additive(self, example_table):
        pooled = margins(example_table).m
        a = project(example_table.counts_trt)
        b = project(example_table.counts_ctr)
        assert tuple(x + y for x, y in zip(a, b)) == project(pooled)

    def test_margin_sum_checked(self):
        with pytest.raises(InputError):
            MarginVector((1, 1), n_trt=1, n_ctr=2)


class TestRestriction:
    def test_single_endpoint_of_example(self, example_margins):
        assert restrict_margins(example_margins, [0]).m == (162, 13)

    def test_full_set_is_identity(self, example_margins):
        assert restrict_margins(example_margins, None) == example_margins

    def test_second_endpoint_of_toy(self, toy_margins):
        assert restrict_margins(toy_margins, [1]).m == (3, 1)

    def test_commutes_with_margins(self, example_table):
        for J in ([0], [1], [0, 1]):
            assert restrict_margins(margins(example_table), J) == margins(
                collapse_table(example_table, J)
            )

    def test_collapse_cells_keeps_marginals(self):
        q = CellProbabilities((0.4, 0.2, 0.1, 0.3))
        collapsed = collapse_cells(q, [1])
        assert collapsed.q == pytest.approx((0.5, 0.5))
        assert collapsed.marginal(0) == pytest.approx(q.marginal(1))


class TestLevels:
    def test_decimal_is_exact(self):
        assert parse_alpha("0.025") == Fraction(1, 40)
        assert parse_alpha(0.025) == Fraction(1, 40)

    @pytest.mark.parametrize("bad", ["-0.1", "1.5", "abc"])
    def test_invalid(self, bad):
        with pytest.raises(InputError):
            parse_alpha(bad)

    def test_zero_allowed_only_when_asked(self):
        assert parse_alpha("0") == 0
        with pytest.raises(InputError):
            parse_alpha("0", allow_zero=False)

    def test_budget_is_floor(self):
        assert level_budget(6, Fraction(3, 10)) == 1
        assert within_level(1, 6, Fraction(3, 10))
        assert not within_level(2, 6, Fraction(3, 10))
