"""
Tests for evaluation reports, cross-dataset averages and distortion summaries
"""
import numpy as np
import pytest
from scipy import special

from mdsi.core.models import EvalReport, LogisticParams
from mdsi.evaluation.report import (
    aggregate_reports,
    display_value,
    evaluate,
    report_rows,
    summarize_groups,
)
from mdsi.core.errors import DegenerateInput


def make_report(src, n, name=""):
    return EvalReport(
        n=n, src=src, krc=src, lpcc=src, pcc=abs(src), rmse=1.0,
        params=LogisticParams(0, 1, 0, 1, 0), residuals=np.zeros(n), name=name,
    )


class TestEvaluate:
    """Test the full statistics of one dataset"""

    def test_scores_equal_mos(self, rng):
        mos = rng.uniform(0, 100, size=40)
        report = evaluate(mos, mos, name="same")
        assert report.src == pytest.approx(1.0)
        assert report.krc == pytest.approx(1.0)
        assert report.lpcc == pytest.approx(1.0)
        assert report.pcc == pytest.approx(1.0, abs=1e-9)
        assert report.rmse == pytest.approx(0.0, abs=1e-5)
        assert report.n == 40
        assert report.residuals.shape == (40,)

    def test_reversed_scores(self, rng):
        mos = rng.uniform(0, 100, size=40)
        report = evaluate(-mos, mos)
        assert report.src == pytest.approx(-1.0)
        assert report.krc == pytest.approx(-1.0)
        assert display_value(report, "src") == pytest.approx(1.0)
        assert display_value(report, "src", signed=True) == pytest.approx(-1.0)
        # PCC is measured after the mapping and stays positive
        assert report.pcc == pytest.approx(1.0, abs=1e-9)

    def test_logistic_improves_linear_correlation(self, rng):
        scores = rng.uniform(0, 1, size=80)
        mos = 100.0 * special.expit(12.0 * (scores - 0.5)) + rng.normal(0, 1.0, size=80)
        report = evaluate(scores, mos)
        assert report.pcc > report.lpcc
        assert report.rmse < 2.0

    def test_to_dict(self, rng):
        mos = rng.uniform(0, 100, size=10)
        data = evaluate(mos, mos, name="d").to_dict()
        assert {"name", "n", "src", "krc", "lpcc", "pcc", "rmse"} <= set(data)


class TestAggregate:
    """Test averaging across datasets"""

    def test_plain_average(self):
        averages = aggregate_reports([make_report(0.8, 10), make_report(0.9, 30)])
        assert averages["src"] == pytest.approx(0.85)

    def test_weighted_average(self):
        averages = aggregate_reports([make_report(0.8, 10), make_report(0.9, 30)], weighted=True)
        assert averages["src"] == pytest.approx((10 * 0.8 + 30 * 0.9) / 40)

    def test_magnitudes_by_default(self):
        reports = [make_report(-0.8, 10), make_report(0.9, 30)]
        assert aggregate_reports(reports)["src"] == pytest.approx(0.85)
        assert aggregate_reports(reports, signed=True)["src"] == pytest.approx(0.05)

    def test_empty(self):
        with pytest.raises(DegenerateInput):
            aggregate_reports([])

    def test_rows(self):
        rows = report_rows([make_report(-0.5, 4, name="a")])
        assert rows == [["a", "4", "0.5000", "0.5000", "0.5000", "0.5000", "1.0000"]]


class TestSummarizeGroups:
    """Test per-distortion SRC summaries"""

    def test_summary_columns(self):
        groups = {"blur": [1, 2, 3], "noise": [1, 3, 2]}
        group_mos = {"blur": [1, 2, 3], "noise": [1, 2, 3]}
        summary = summarize_groups(groups, group_mos)
        assert list(summary.src_by_group) == ["blur", "noise"]
        assert summary.src_by_group["blur"] == pytest.approx(1.0)
        assert summary.src_by_group["noise"] == pytest.approx(0.5)
        assert summary.average == pytest.approx(0.75)
        assert summary.minimum == pytest.approx(0.5)
        assert summary.std == pytest.approx(0.25)

    def test_degenerate_group_skipped(self):
        groups = {"blur": [1, 2, 3], "single": [5]}
        summary = summarize_groups(groups, {"blur": [3, 2, 1], "single": [1]})
        assert list(summary.src_by_group) == ["blur"]
        assert summary.src_by_group["blur"] == pytest.approx(1.0)

    def test_signed(self):
        summary = summarize_groups({"blur": [1, 2, 3]}, {"blur": [3, 2, 1]}, signed=True)
        assert summary.src_by_group["blur"] == pytest.approx(-1.0)

    def test_all_skipped(self):
        assert summarize_groups({"a": [1]}, {"a": [2]}) is None
