"""Load product corpora from CSV/JSONL into validated records.

Column names in the wild drift, so the logical-field -> column mapping
is configuration, not code. Files must be valid UTF-8; invalid bytes
are a hard error so scores are never computed on silently corrupted
text. Any product-URL column is simply never mapped, and therefore
ignored.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

from .lexicon import LexiconSet
from .metrics import category_keywords

__all__ = [
    "ProductRecord",
    "ColumnMapping",
    "IngestError",
    "load_products",
    "write_products",
    "validate_record",
]

CONTENT_FIELDS = ("product_name", "product_category", "about_product", "description")


class IngestError(ValueError):
    """Raised for unreadable or structurally invalid input files."""


@dataclass(frozen=True)
class ProductRecord:
    product_name: str
    product_category: str  # pipe-delimited hierarchy
    about_product: str
    description: str
    source_label: str


@dataclass(frozen=True)
class ColumnMapping:
    """Logical field name -> source column/key name."""

    product_name: str = "Product Name"
    product_category: str = "Category"
    about_product: str = "About Product"
    description: str = "description"
    source_label: str | None = None  # optional column; fall back to default label

    def __post_init__(self) -> None:
        columns = [getattr(self, f) for f in CONTENT_FIELDS]
        if self.source_label is not None:
            columns.append(self.source_label)
        if len(set(columns)) != len(columns):
            raise IngestError(f"column mapping is not distinct: {columns}")

    @classmethod
    def jsonl_default(cls) -> "ColumnMapping":
        return cls(
            product_name="product_name",
            product_category="product_category",
            about_product="about_product",
            description="description",
            source_label="source_label",
        )

    def with_overrides(self, overrides: dict[str, str]) -> "ColumnMapping":
        known = set(CONTENT_FIELDS) | {"source_label"}
        unknown = set(overrides) - known
        if unknown:
            raise IngestError(f"unknown mapping fields: {sorted(unknown)}")
        return replace(self, **overrides)


def _record_from_row(
    row: dict, mapping: ColumnMapping, default_label: str, where: str
) -> ProductRecord:
    values = {}
    for logical in CONTENT_FIELDS:
        column = getattr(mapping, logical)
        if column not in row:
            raise IngestError(f"{where}: missing mapped column {column!r}")
        values[logical] = str(row[column] or "").strip()
    label = default_label
    if mapping.source_label is not None and row.get(mapping.source_label):
        label = str(row[mapping.source_label]).strip()
    return ProductRecord(source_label=label, **values)


def load_products(
    path: str | Path,
    format: str,
    mapping: ColumnMapping | None = None,
    default_label: str = "Human Generated",
) -> list[ProductRecord]:
    """Load one record per row/line, order preserved."""
    path = Path(path)
    if not path.is_file():
        raise IngestError(f"input file not found: {path}")
    if format == "csv":
        return _load_csv(path, mapping or ColumnMapping(), default_label)
    if format == "jsonl":
        return _load_jsonl(path, mapping or ColumnMapping.jsonl_default(), default_label)
    raise IngestError(f"unknown format: {format!r}")


def _load_csv(path: Path, mapping: ColumnMapping, default_label: str) -> list[ProductRecord]:
    records = []
    try:
        with open(path, newline="", encoding="utf-8", errors="strict") as fh:
            reader = csv.DictReader(fh)
            for i, row in enumerate(reader, start=1):
                if None in row:  # more cells than header columns
                    raise IngestError(f"{path}, row {i}: unparseable row")
                records.append(_record_from_row(row, mapping, default_label, f"{path}, row {i}"))
    except UnicodeDecodeError as exc:
        raise IngestError(f"{path} is not valid UTF-8: {exc}") from exc
    except csv.Error as exc:
        raise IngestError(f"{path}: CSV parse error: {exc}") from exc
    return records


def _load_jsonl(path: Path, mapping: ColumnMapping, default_label: str) -> list[ProductRecord]:
    records = []
    try:
        with open(path, encoding="utf-8", errors="strict") as fh:
            for i, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise IngestError(f"{path}, line {i}: invalid JSON: {exc}") from exc
                if not isinstance(row, dict):
                    raise IngestError(f"{path}, line {i}: expected a JSON object")
                records.append(_record_from_row(row, mapping, default_label, f"{path}, line {i}"))
    except UnicodeDecodeError as exc:
        raise IngestError(f"{path} is not valid UTF-8: {exc}") from exc
    return records


def write_products(
    records: list[ProductRecord],
    path: str | Path,
    format: str,
    mapping: ColumnMapping | None = None,
) -> None:
    """Inverse of load_products; round-trips loaded records exactly."""
    path = Path(path)
    if format == "csv":
        mapping = mapping or ColumnMapping()
        label_col = mapping.source_label or "source_label"
        columns = [getattr(mapping, f) for f in CONTENT_FIELDS] + [label_col]
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(columns)
            for rec in records:
                writer.writerow(
                    [getattr(rec, f) for f in CONTENT_FIELDS] + [rec.source_label]
                )
    elif format == "jsonl":
        mapping = mapping or ColumnMapping.jsonl_default()
        label_col = mapping.source_label or "source_label"
        with open(path, "w", encoding="utf-8") as fh:
            for rec in records:
                row = {getattr(mapping, f): getattr(rec, f) for f in CONTENT_FIELDS}
                row[label_col] = rec.source_label
                fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    else:
        raise IngestError(f"unknown format: {format!r}")


def validate_record(rec: ProductRecord, lex: LexiconSet | None = None) -> list[str]:
    """Return a list of violations; empty means the record passes.

    Never raises. The stopword check uses the shipped defaults unless a
    LexiconSet is supplied.
    """
    violations = []
    if not rec.product_name.strip():
        violations.append("empty product name")
    if not rec.description.strip():
        violations.append("empty description")
    if not rec.product_category.strip():
        violations.append("empty category")
    else:
        if lex is None:
            from .lexicon import default_lexicons

            lex = default_lexicons()
        if not category_keywords(rec.product_category, lex):
            violations.append("no usable category keywords")
    return violations
