import csv
import io
import json
import random

import pytest

from copygrade.metrics import ScoreVector
from copygrade.report import (
    METRICS,
    CorpusReport,
    aggregate,
    highlight_best,
    render,
)


def vec(**overrides):
    values = dict(
        sentiment=0.9, readability=7.0, persuasiveness=0.05, seo=0.02,
        clarity=0.2, emotional_appeal=0.01, cta=0,
    )
    values.update(overrides)
    return ScoreVector(**values)


def report_from_means(means, counts=None):
    return CorpusReport(
        labels=tuple(means),
        counts=counts or {label: 100 for label in means},
        means={label: dict(row) for label, row in means.items()},
    )


class TestAggregate:
    def test_mean_of_two(self):
        rep = aggregate([("A", vec(sentiment=0.9)), ("A", vec(sentiment=1.0))])
        assert rep.means["A"]["sentiment"] == pytest.approx(0.95)
        assert rep.counts["A"] == 2

    def test_two_singleton_labels_echo_vectors(self):
        va, vb = vec(cta=1), vec(cta=3)
        rep = aggregate([("A", va), ("B", vb)])
        assert rep.means["A"] == va.as_dict()
        assert rep.means["B"] == vb.as_dict()

    def test_mean_of_identical_vectors_is_the_vector(self):
        rep = aggregate([("A", vec())] * 7)
        assert rep.means["A"] == vec().as_dict()

    def test_permutation_invariance(self):
        rng = random.Random(7)
        scores = [
            (rng.choice("ABC"), vec(sentiment=rng.random(), readability=rng.random() * 12))
            for _ in range(60)
        ]
        shuffled = scores[:]
        rng.shuffle(shuffled)
        a, b = aggregate(scores), aggregate(shuffled)
        assert a.means == b.means and a.counts == b.counts

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError, match="no scores"):
            aggregate([])

    def test_small_source_warning(self):
        rep = aggregate([("A", vec())] * 3 + [("B", vec())] * 5)
        assert any("'A'" in w for w in rep.warnings)
        assert not any("'B'" in w for w in rep.warnings)

    def test_median_method(self):
        rep = aggregate(
            [("A", vec(readability=1.0)), ("A", vec(readability=2.0)),
             ("A", vec(readability=30.0))],
            method="median",
        )
        assert rep.means["A"]["readability"] == 2.0
        assert rep.aggregation == "median"


class TestHighlightBest:
    def test_readability_band_midpoint(self):
        rep = report_from_means({
            "A": dict(vec(readability=6.9).as_dict()),
            "B": dict(vec(readability=7.3).as_dict()),
            "C": dict(vec(readability=9.9).as_dict()),
        })
        assert highlight_best(rep).best["readability"] == "B"

    def test_persuasiveness_band_tie_goes_to_higher(self):
        rep = report_from_means({
            "A": dict(vec(persuasiveness=0.014).as_dict()),
            "B": dict(vec(persuasiveness=0.062).as_dict()),
            "C": dict(vec(persuasiveness=0.077).as_dict()),
        })
        assert highlight_best(rep).best["persuasiveness"] == "C"

    def test_persuasiveness_outside_band_nearest_wins(self):
        rep = report_from_means({
            "A": dict(vec(persuasiveness=0.02).as_dict()),  # 0.04 below the band
            "B": dict(vec(persuasiveness=0.16).as_dict()),  # 0.06 above the band
        })
        assert highlight_best(rep).best["persuasiveness"] == "A"

    def test_higher_is_better_metrics(self):
        rep = report_from_means({
            "A": dict(vec(sentiment=0.99, seo=0.01, clarity=0.21,
                          emotional_appeal=0.02, cta=0.3).as_dict()),
            "B": dict(vec(sentiment=0.95, seo=0.04, clarity=0.19,
                          emotional_appeal=0.01, cta=0.1).as_dict()),
        })
        best = highlight_best(rep).best
        assert best["sentiment"] == "A"
        assert best["seo"] == "B"
        assert best["clarity"] == "A"
        assert best["emotional_appeal"] == "A"
        assert best["cta"] == "A"

    def test_single_label_wins_everything(self):
        rep = highlight_best(report_from_means({"Only": vec().as_dict()}))
        assert set(rep.best.values()) == {"Only"}
        assert set(rep.best) == set(METRICS)

    def test_exact_tie_breaks_lexicographically(self):
        rep = report_from_means({
            "B": vec().as_dict(),
            "A": vec().as_dict(),
        })
        assert set(highlight_best(rep).best.values()) == {"A"}

    def test_idempotent(self):
        rep = highlight_best(report_from_means({"A": vec().as_dict()}))
        assert highlight_best(rep) == rep


class TestRender:
    def fixture_report(self):
        rep = aggregate([
            ("Human Generated", vec(sentiment=1.0, cta=1)),
            ("Human Generated", vec(sentiment=0.9, cta=0)),
            ("GPT2", vec(sentiment=0.8, cta=2)),
        ])
        return highlight_best(rep)

    def test_markdown_column_order_and_bold(self):
        md = render(self.fixture_report(), "markdown")
        header = md.splitlines()[0]
        assert header == (
            "| Source | Sentiment | Readability | Persuasiveness | SEO | Clarity "
            "| Emotional Appeal | Call-to-Action | Records |"
        )
        assert "**0.950**" in md  # best sentiment cell is bolded
        assert "interpreted cautiously" in md  # clarity caveat footnote

    def test_markdown_rounds_to_three_decimals(self):
        md = render(self.fixture_report(), "markdown")
        assert "0.950" in md and "0.94999" not in md

    def test_json_round_trip_preserves_precision(self):
        rep = self.fixture_report()
        payload = json.loads(render(rep, "json"))
        for label in rep.labels:
            for metric in METRICS:
                assert payload["metrics"][metric][label] == rep.means[label][metric]
        assert payload["best"] == rep.best
        assert payload["counts"] == rep.counts
        assert payload["aggregation"] == "mean"

    def test_csv_one_row_per_label(self):
        rep = self.fixture_report()
        rows = list(csv.reader(io.StringIO(render(rep, "csv"))))
        assert rows[0][:2] == ["source_label", "records"]
        assert len(rows) == 1 + len(rep.labels)
        # unrounded values round-trip through float()
        sentiment_col = rows[0].index("sentiment")
        assert float(rows[1][sentiment_col]) == rep.means[rep.labels[0]]["sentiment"]

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="format"):
            render(self.fixture_report(), "xml")
