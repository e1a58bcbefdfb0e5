#!/usr/bin/env python3
"""End-to-end demo: generate -> score -> compare against a local mock backend.

Spins up the mock backend in-process, runs the full pipeline on a tiny
product file, and prints the resulting comparison table.

Usage: python scripts/run_demo_pipeline.py [--workdir demo_out]
"""

import argparse
import json
import subprocess
import sys
import threading
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from mock_backend import Handler, ThreadingHTTPServer  # noqa: E402

PRODUCTS = [
    {
        "product_name": "Wooden Puzzle",
        "product_category": "Toys & Games | Puzzles",
        "about_product": "A 500 piece wooden jigsaw puzzle.",
        "description": "This proven puzzle is great. Kids love it. Shop now!",
        "source_label": "Human Generated",
    },
    {
        "product_name": "Gaming Chair",
        "product_category": "Furniture | Chairs",
        "about_product": "Ergonomic chair with lumbar support.",
        "description": "Amazing comfort you will love. Buy now!",
        "source_label": "Human Generated",
    },
]


def cli(*args):
    cmd = [sys.executable, "-m", "copygrade.cli", *args]
    print("+", " ".join(cmd))
    subprocess.run(cmd, check=False)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", default="demo_out")
    args = parser.parse_args()
    work = Path(args.workdir)
    work.mkdir(parents=True, exist_ok=True)

    server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
    threading.Thread(target=server.serve_forever, daemon=True).start()
    url = f"http://127.0.0.1:{server.server_port}/v1/chat/completions"
    print(f"mock backend at {url}")

    products = work / "products.jsonl"
    with open(products, "w", encoding="utf-8") as fh:
        for row in PRODUCTS:
            fh.write(json.dumps(row) + "\n")
    backend = work / "backend.json"
    backend.write_text(json.dumps({"url": url, "model": "mock"}))

    cli("generate", "--input", str(products), "--format", "jsonl",
        "--backend", str(backend), "--conditions", "with,without",
        "--out", str(work / "gen"))
    cli("score", "--input", str(work / "gen" / "generated.jsonl"),
        "--format", "jsonl", "--out", str(work / "generated_scores"))
    cli("score", "--input", str(products), "--format", "jsonl",
        "--out", str(work / "human_scores"))
    cli("compare",
        str(work / "generated_scores" / "scores.jsonl"),
        str(work / "human_scores" / "scores.jsonl"),
        "--out", str(work / "comparison"))

    print()
    print((work / "comparison" / "report.md").read_text())
    server.shutdown()


if __name__ == "__main__":
    main()
