import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from copygrade.ingest import (
    ColumnMapping,
    IngestError,
    ProductRecord,
    load_products,
    validate_record,
    write_products,
)


def write_csv(path, header, rows):
    import csv

    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


HEADER = ["Product Name", "Category", "About Product", "description", "Product Url"]


class TestLoadCsv:
    def test_basic_load_ignores_url_column(self, tmp_path):
        path = tmp_path / "products.csv"
        write_csv(
            path,
            HEADER,
            [["Puzzle", "Toys", "About it", "Nice puzzle.", "http://example.com/p"]],
        )
        records = load_products(path, "csv")
        assert records == [
            ProductRecord("Puzzle", "Toys", "About it", "Nice puzzle.", "Human Generated")
        ]

    def test_quoted_commas_and_newlines_preserved(self, tmp_path):
        path = tmp_path / "products.csv"
        desc = "First line, with comma.\nSecond line."
        write_csv(path, HEADER, [["P", "C", "A", desc, ""]])
        records = load_products(path, "csv")
        assert records[0].description == desc

    def test_missing_mapped_column(self, tmp_path):
        path = tmp_path / "products.csv"
        write_csv(path, ["Product Name", "Category"], [["P", "C"]])
        with pytest.raises(IngestError, match="About Product"):
            load_products(path, "csv")

    def test_order_preserved(self, tmp_path):
        path = tmp_path / "products.csv"
        write_csv(path, HEADER, [[f"P{i}", "C", "A", "D.", ""] for i in range(10)])
        records = load_products(path, "csv")
        assert [r.product_name for r in records] == [f"P{i}" for i in range(10)]

    def test_invalid_utf8(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_bytes(b"Product Name,Category,About Product,description\n\xffx,c,a,d\n")
        with pytest.raises(IngestError, match="UTF-8"):
            load_products(path, "csv")

    def test_missing_file(self, tmp_path):
        with pytest.raises(IngestError, match="not found"):
            load_products(tmp_path / "nope.csv", "csv")

    def test_source_label_column(self, tmp_path):
        path = tmp_path / "products.csv"
        write_csv(
            path,
            HEADER + ["Source"],
            [["P", "C", "A", "D.", "", "GPT2"]],
        )
        mapping = ColumnMapping(source_label="Source")
        records = load_products(path, "csv", mapping)
        assert records[0].source_label == "GPT2"


class TestLoadJsonl:
    def test_basic_load(self, golden_records):
        assert len(golden_records) == 3
        assert golden_records[0].product_name == "Wooden Puzzle"
        assert golden_records[0].source_label == "Human Generated"

    def test_missing_key_names_line(self, tmp_path):
        path = tmp_path / "p.jsonl"
        rows = [
            {"product_name": "A", "product_category": "C", "about_product": "x",
             "description": "d"},
            {"product_name": "B", "product_category": "C", "about_product": "x"},
        ]
        path.write_text(
            "\n".join(json.dumps(r) for r in rows) + "\n", encoding="utf-8"
        )
        with pytest.raises(IngestError, match="line 2.*description"):
            load_products(path, "jsonl")

    def test_invalid_json_line(self, tmp_path):
        path = tmp_path / "p.jsonl"
        path.write_text("{not json}\n", encoding="utf-8")
        with pytest.raises(IngestError, match="line 1"):
            load_products(path, "jsonl")


class TestColumnMapping:
    def test_mappings_must_be_distinct(self):
        with pytest.raises(IngestError, match="distinct"):
            ColumnMapping(product_name="x", product_category="x")

    def test_unknown_override_field(self):
        with pytest.raises(IngestError, match="unknown mapping"):
            ColumnMapping().with_overrides({"price": "Price"})

    def test_override(self):
        mapping = ColumnMapping().with_overrides({"description": "Body"})
        assert mapping.description == "Body"
        assert mapping.product_name == "Product Name"


_field_text = st.text(
    alphabet=st.characters(
        exclude_categories=("Cc", "Cs"), include_characters="\n,\""
    ),
)

records_strategy = st.lists(
    st.builds(
        ProductRecord,
        product_name=_field_text.map(str.strip).filter(bool),
        product_category=st.sampled_from(["Toys | Games", "Sports", "Home | Kitchen"]),
        about_product=_field_text.map(str.strip),
        description=_field_text.map(str.strip),
        source_label=st.sampled_from(["Human Generated", "GPT2", "LLAMA (Sample)"]),
    ),
    min_size=1,
    max_size=8,
)


@given(records_strategy)
def test_csv_round_trip(tmp_path_factory, records):
    path = tmp_path_factory.mktemp("rt") / "r.csv"
    mapping = ColumnMapping(source_label="source_label")
    write_products(records, path, "csv", mapping)
    assert load_products(path, "csv", mapping) == records


@given(records_strategy)
def test_jsonl_round_trip(tmp_path_factory, records):
    path = tmp_path_factory.mktemp("rt") / "r.jsonl"
    write_products(records, path, "jsonl")
    assert load_products(path, "jsonl") == records


class TestValidateRecord:
    def test_pass(self, golden_records, fixture_lex):
        assert validate_record(golden_records[0], fixture_lex) == []

    def test_empty_description(self, fixture_lex):
        rec = ProductRecord("P", "Toys", "a", "", "L")
        assert "empty description" in validate_record(rec, fixture_lex)

    def test_empty_category(self, fixture_lex):
        rec = ProductRecord("P", "", "a", "d", "L")
        assert "empty category" in validate_record(rec, fixture_lex)

    def test_stopword_only_category(self, fixture_lex):
        rec = ProductRecord("P", "The | Of", "a", "d", "L")
        assert "no usable category keywords" in validate_record(rec, fixture_lex)

    def test_never_raises(self, fixture_lex):
        rec = ProductRecord("", "", "", "", "")
        violations = validate_record(rec, fixture_lex)
        assert len(violations) >= 3
