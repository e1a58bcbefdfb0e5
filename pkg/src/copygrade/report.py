"""Aggregate score vectors by source label into a comparison table.

One row per source label, one column per metric, with a best-source
annotation per metric. "Best" is the highest mean except for
readability (nearest the 7-9 ideal band's midpoint, 8.0) and
persuasiveness (nearest the 0.06-0.10 ideal band, ties inside the band
going to the higher value). Remaining ties break by label order.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, replace
from statistics import median

from .metrics import ScoreVector

__all__ = [
    "METRICS",
    "METRIC_TITLES",
    "CorpusReport",
    "aggregate",
    "highlight_best",
    "render",
]

METRICS = ScoreVector.FIELDS

METRIC_TITLES = {
    "sentiment": "Sentiment",
    "readability": "Readability",
    "persuasiveness": "Persuasiveness",
    "seo": "SEO",
    "clarity": "Clarity",
    "emotional_appeal": "Emotional Appeal",
    "cta": "Call-to-Action",
}

READABILITY_IDEAL_MIDPOINT = 8.0  # midpoint of the 7-9 ideal band
PERSUASIVENESS_BAND = (0.06, 0.10)

MIN_RECORDS_WARNING = 5

CLARITY_FOOTNOTE = (
    "Clarity rewards shorter words and should be interpreted cautiously: "
    "longer words do not necessarily make a text harder to understand."
)


@dataclass(frozen=True)
class CorpusReport:
    labels: tuple[str, ...]  # first-seen order
    counts: dict[str, int]
    means: dict[str, dict[str, float]]  # label -> metric -> mean
    best: dict[str, str] = field(default_factory=dict)  # metric -> label
    warnings: tuple[str, ...] = ()
    aggregation: str = "mean"


def aggregate(
    scores: list[tuple[str, ScoreVector]], method: str = "mean"
) -> CorpusReport:
    """Per-label aggregate of each metric; deterministic and order-insensitive."""
    if not scores:
        raise ValueError("no scores to aggregate")
    if method not in ("mean", "median"):
        raise ValueError(f"unknown aggregation method: {method!r}")
    by_label: dict[str, list[ScoreVector]] = {}
    labels: list[str] = []
    for label, vec in scores:
        if label not in by_label:
            by_label[label] = []
            labels.append(label)
        by_label[label].append(vec)

    means = {}
    counts = {}
    warnings = []
    for label in labels:
        vecs = by_label[label]
        counts[label] = len(vecs)
        if len(vecs) < MIN_RECORDS_WARNING:
            warnings.append(f"source {label!r} has only {len(vecs)} record(s)")
        means[label] = {
            metric: _aggregate_values(
                sorted(getattr(v, metric) for v in vecs), method
            )
            for metric in METRICS
        }
    return CorpusReport(
        labels=tuple(labels),
        counts=counts,
        means=means,
        warnings=tuple(warnings),
        aggregation=method,
    )


def _aggregate_values(values: list[float], method: str) -> float:
    # fsum over sorted values keeps the result invariant under input
    # permutation despite floating-point non-associativity
    if method == "median":
        return float(median(values))
    return math.fsum(values) / len(values)


def _band_distance(value: float, band: tuple[float, float]) -> float:
    lo, hi = band
    if value < lo:
        return lo - value
    if value > hi:
        return value - hi
    return 0.0


def highlight_best(report: CorpusReport) -> CorpusReport:
    """Fill the best-source annotation per metric; idempotent."""
    best = {}
    for metric in METRICS:
        if metric == "readability":
            key = lambda label: (
                abs(report.means[label][metric] - READABILITY_IDEAL_MIDPOINT),
                label,
            )
        elif metric == "persuasiveness":
            key = lambda label: (
                _band_distance(report.means[label][metric], PERSUASIVENESS_BAND),
                -report.means[label][metric],
                label,
            )
        else:
            key = lambda label: (-report.means[label][metric], label)
        best[metric] = min(sorted(report.labels), key=key)
    return replace(report, best=best)


def render(report: CorpusReport, format: str) -> str:
    """Markdown table, CSV, or JSON; rounding is display-only (markdown)."""
    if format == "markdown":
        return _render_markdown(report)
    if format == "csv":
        return _render_csv(report)
    if format == "json":
        return _render_json(report)
    raise ValueError(f"unknown render format: {format!r}")


def _render_markdown(report: CorpusReport) -> str:
    header = ["Source"] + [METRIC_TITLES[m] for m in METRICS] + ["Records"]
    lines = [
        "| " + " | ".join(header) + " |",
        "|" + "|".join(["---"] * len(header)) + "|",
    ]
    for label in report.labels:
        cells = [label]
        for metric in METRICS:
            cell = f"{report.means[label][metric]:.3f}"
            if report.best.get(metric) == label:
                cell = f"**{cell}**"
            cells.append(cell)
        cells.append(str(report.counts[label]))
        lines.append("| " + " | ".join(cells) + " |")
    lines.append("")
    lines.append(f"Aggregation: {report.aggregation}.")
    lines.append("")
    lines.append(f"Note: {CLARITY_FOOTNOTE}")
    for warning in report.warnings:
        lines.append(f"Warning: {warning}")
    return "\n".join(lines) + "\n"


def _render_csv(report: CorpusReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["source_label", "records"] + list(METRICS))
    for label in report.labels:
        writer.writerow(
            [label, report.counts[label]]
            + [repr(report.means[label][m]) for m in METRICS]
        )
    return buf.getvalue()


def _render_json(report: CorpusReport) -> str:
    payload = {
        "labels": list(report.labels),
        "metrics": {
            metric: {label: report.means[label][metric] for label in report.labels}
            for metric in METRICS
        },
        "best": dict(report.best),
        "counts": dict(report.counts),
        "aggregation": report.aggregation,
        "warnings": list(report.warnings),
    }
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
