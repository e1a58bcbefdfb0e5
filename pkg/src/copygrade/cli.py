"""Command-line surface: score, generate, compare, lexicons.

Exit codes: 0 success, 1 partial data failures (some records failed
validation or scoring), 2 usage/config errors. Backend API keys come
only from the COPYGRADE_API_KEY environment variable, never flags.
"""

from __future__ import annotations

import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from . import genharness, report as report_mod
from .ingest import (
    ColumnMapping,
    IngestError,
    ProductRecord,
    load_products,
    validate_record,
)
from .lexicon import (
    LEXICON_FILES,
    LexiconError,
    LexiconSet,
    default_lexicons,
    load_lexicon_dir,
    load_lexicon_file,
)
from .metrics import ScoreVector, SentimentClient, score_all

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_USAGE = 2


def _parse_mappings(pairs: tuple[str, ...], format: str) -> ColumnMapping:
    base = ColumnMapping() if format == "csv" else ColumnMapping.jsonl_default()
    overrides = {}
    for pair in pairs:
        if "=" not in pair:
            raise click.UsageError(f"--map expects field=column, got {pair!r}")
        field, column = pair.split("=", 1)
        overrides[field.strip()] = column.strip()
    try:
        return base.with_overrides(overrides)
    except IngestError as exc:
        raise click.UsageError(str(exc)) from exc


def _load_lexicons(lexicons_dir: str | None) -> LexiconSet:
    try:
        if lexicons_dir is None:
            return default_lexicons()
        return load_lexicon_dir(lexicons_dir)
    except LexiconError as exc:
        raise click.UsageError(str(exc)) from exc


def _load_input(
    input_path: str, format: str, mappings: tuple[str, ...]
) -> list[ProductRecord]:
    mapping = _parse_mappings(mappings, format)
    try:
        return load_products(input_path, format, mapping)
    except IngestError as exc:
        raise click.UsageError(str(exc)) from exc


@click.group()
def main() -> None:
    """Quality scoring and generation harness for product descriptions."""


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--format", type=click.Choice(["csv", "jsonl"]), default="csv")
@click.option("--map", "mappings", multiple=True, metavar="FIELD=COLUMN")
@click.option("--lexicons", "lexicons_dir", type=click.Path(), default=None)
@click.option("--sentiment", type=click.Choice(["lexicon", "remote"]), default="lexicon")
@click.option("--sentiment-url", default=None)
@click.option("--out", "out_dir", type=click.Path(), default=".")
@click.option("--concurrency", type=int, default=None)
@click.pass_context
def score(ctx, input_path, format, mappings, lexicons_dir, sentiment, sentiment_url, out_dir, concurrency):
    """Score every record and write per-record scores plus a report."""
    if sentiment == "remote" and not sentiment_url:
        raise click.UsageError("--sentiment remote requires --sentiment-url")
    lex = _load_lexicons(lexicons_dir)
    records = _load_input(input_path, format, mappings)
    if not records:
        raise click.UsageError(f"no records in {input_path}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    client = SentimentClient(sentiment_url) if sentiment == "remote" else None
    workers = concurrency or os.cpu_count() or 1

    def score_one(item: tuple[int, ProductRecord]):
        idx, rec = item
        violations = validate_record(rec, lex)
        if violations:
            return idx, rec, None, "; ".join(violations)
        try:
            vec = score_all(rec, lex, sentiment_mode=sentiment, sentiment_client=client)
            return idx, rec, vec, None
        except (ValueError, RuntimeError) as exc:
            return idx, rec, None, str(exc)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(score_one, enumerate(records)))
    results.sort(key=lambda r: r[0])

    failures = 0
    scored: list[tuple[str, ScoreVector]] = []
    with open(out / "scores.jsonl", "w", encoding="utf-8") as fh:
        for idx, rec, vec, error in results:
            if error is not None:
                failures += 1
                click.echo(
                    f"record {idx} ({rec.product_name!r}): {error}", err=True
                )
                continue
            scored.append((rec.source_label, vec))
            fh.write(
                json.dumps(
                    {
                        "record_index": idx,
                        "product_name": rec.product_name,
                        "source_label": rec.source_label,
                        "scores": vec.as_dict(),
                    },
                    ensure_ascii=False,
                )
                + "\n"
            )
    if scored:
        _write_report(scored, out)
    ctx.exit(EXIT_PARTIAL if failures else EXIT_OK)


def _write_report(scored: list[tuple[str, ScoreVector]], out: Path, method: str = "mean") -> None:
    rep = report_mod.highlight_best(report_mod.aggregate(scored, method=method))
    (out / "report.md").write_text(report_mod.render(rep, "markdown"), encoding="utf-8")
    (out / "report.csv").write_text(report_mod.render(rep, "csv"), encoding="utf-8")
    (out / "report.json").write_text(report_mod.render(rep, "json"), encoding="utf-8")


@main.command()
@click.option("--input", "input_path", required=True, type=click.Path())
@click.option("--format", type=click.Choice(["csv", "jsonl"]), default="csv")
@click.option("--map", "mappings", multiple=True, metavar="FIELD=COLUMN")
@click.option("--backend", "backend_path", required=True, type=click.Path())
@click.option("--conditions", default="with,without", show_default=True)
@click.option("--out", "out_dir", type=click.Path(), default=".")
@click.option("--concurrency", type=int, default=None)
@click.option("--resume", is_flag=True, default=False)
@click.pass_context
def generate(ctx, input_path, format, mappings, backend_path, conditions, out_dir, concurrency, resume):
    """Generate descriptions for every record under the selected conditions."""
    condition_names = []
    for name in conditions.split(","):
        name = name.strip()
        if name in ("with", "with_sample"):
            condition_names.append("with_sample")
        elif name in ("without", "without_sample"):
            condition_names.append("without_sample")
        elif name:
            raise click.UsageError(f"unknown condition: {name!r}")
    if not condition_names:
        raise click.UsageError("no conditions selected")
    try:
        backend = genharness.BackendConfig.from_file(backend_path)
    except (OSError, ValueError, TypeError) as exc:
        raise click.UsageError(f"bad backend config {backend_path}: {exc}") from exc
    if concurrency:
        backend = genharness.BackendConfig(
            **{**backend.__dict__, "max_in_flight": concurrency}
        )
    records = _load_input(input_path, format, mappings)
    if not records:
        raise click.UsageError(f"no records in {input_path}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    results = genharness.run_batch(
        records,
        backend,
        conditions=tuple(condition_names),
        out_path=out / "generated.jsonl",
        resume=resume,
    )
    failures = sum(1 for r in results if r.error is not None)
    for r in results:
        if r.error is not None:
            click.echo(
                f"record {r.record_index} ({r.condition}): {r.error}", err=True
            )
    click.echo(f"{len(results) - failures}/{len(results)} generations succeeded")
    ctx.exit(EXIT_PARTIAL if failures else EXIT_OK)


@main.command()
@click.argument("score_files", nargs=-1, type=click.Path())
@click.option("--out", "out_dir", type=click.Path(), default=".")
@click.option("--median", "use_median", is_flag=True, default=False,
              help="Aggregate with medians instead of means.")
def compare(score_files, out_dir, use_median):
    """Merge one or more scores.jsonl files into a comparison report."""
    if not score_files:
        raise click.UsageError("at least one scores file is required")
    scored: list[tuple[str, ScoreVector]] = []
    label_counts: dict[str, list[int]] = {}
    for path in score_files:
        per_file: dict[str, int] = {}
        try:
            with open(path, encoding="utf-8") as fh:
                for i, line in enumerate(fh, start=1):
                    if not line.strip():
                        continue
                    row = json.loads(line)
                    vec = ScoreVector(**row["scores"])
                    scored.append((row["source_label"], vec))
                    per_file[row["source_label"]] = per_file.get(row["source_label"], 0) + 1
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise click.UsageError(f"cannot read scores file {path}: {exc}") from exc
        for label, n in per_file.items():
            label_counts.setdefault(label, []).append(n)
    for label, ns in label_counts.items():
        if len(ns) > 1 and len(set(ns)) > 1:
            click.echo(
                f"warning: label {label!r} appears in multiple files with "
                f"differing record counts {ns}", err=True
            )
    if not scored:
        raise click.UsageError("scores files contain no records")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    _write_report(scored, out, method="median" if use_median else "mean")
    click.echo(f"report written to {out}")


@main.group()
def lexicons() -> None:
    """Inspect or validate lexicon directories."""


@lexicons.command()
@click.option("--lexicons", "lexicons_dir", type=click.Path(), default=None)
def show(lexicons_dir):
    """Print effective lexicon sizes and their source."""
    source = lexicons_dir if lexicons_dir else "built-in defaults"
    lex = _load_lexicons(lexicons_dir)
    click.echo(f"source: {source}")
    click.echo(f"persuasive: {len(lex.persuasive)} words")
    click.echo(f"emotion: {len(lex.emotion)} words")
    click.echo(f"cta: {len(lex.cta_phrases)} phrases")
    positive = sum(1 for v in lex.valence.values() if v > 0)
    click.echo(f"valence: {positive} positive, {len(lex.valence) - positive} negative")
    click.echo(f"negators: {len(lex.negators)} words")
    click.echo(f"stopwords: {len(lex.stopwords)} words")


@lexicons.command()
@click.argument("directory", type=click.Path())
@click.pass_context
def validate(ctx, directory):
    """Check every lexicon file in DIRECTORY; report problems with line numbers."""
    failures = 0
    for name, max_tokens in LEXICON_FILES.items():
        try:
            terms = load_lexicon_file(Path(directory) / name, max_tokens=max_tokens)
            click.echo(f"{name}: OK ({len(terms)} terms)")
        except LexiconError as exc:
            failures += 1
            click.echo(f"{name}: {exc}", err=True)
    if failures == 0:
        try:
            load_lexicon_dir(directory)
        except LexiconError as exc:
            failures += 1
            click.echo(str(exc), err=True)
    ctx.exit(EXIT_PARTIAL if failures else EXIT_OK)


if __name__ == "__main__":
    main()
