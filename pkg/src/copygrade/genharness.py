"""Prompt construction and batched description generation.

Prompts follow one fixed template with two conditions: ``with_sample``
includes a worked example description, ``without_sample`` omits exactly
that block and nothing else. Generation talks to any chat-completion
style HTTP backend; per-request failures are captured in the result,
never aborting the batch, and results stream to an append-only JSONL
file so partial batches survive interruption.
"""

from __future__ import annotations

import json
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict
from datetime import datetime, timezone
from pathlib import Path

import requests

from .ingest import ProductRecord, validate_record

__all__ = [
    "CONDITIONS",
    "PROMPT_HEADER",
    "EXAMPLE_BLOCK",
    "INSTRUCTION_BLOCK",
    "BackendConfig",
    "GenerationResult",
    "build_prompt",
    "source_label_for",
    "generate",
    "run_batch",
]

API_KEY_ENV = "COPYGRADE_API_KEY"

CONDITIONS = ("with_sample", "without_sample")

PROMPT_HEADER = (
    "Write a product description for the following product:\n"
    "Product Name: {product_name}\n"
    "Product Category: {product_category}\n"
    "About the Product: {about_product}\n\n"
)

EXAMPLE_BLOCK = (
    "Example1:\n"
    "Adorable Iwako Japanese Vehicle & Plane Eraser Set!"
    "Fun and functional erasers perfect for kids, "
    "students, and collectors. These high-quality erasers feature "
    "detailed designs of various vehicles and planes. "
    "Great for school, office, or creative projects. Shop now!\n"
)

INSTRUCTION_BLOCK = (
    "Avoid using headers like 'Introduce the Product' or "
    "'Highlight Key Features.' Focus only on the product's benefits "
    "and features in a consumer-friendly tone. Only "
    "generate description, no unnecessary details.Keep it concise."
    "Product Description:-"
)


@dataclass(frozen=True)
class BackendConfig:
    url: str
    model: str
    max_tokens: int = 256
    temperature: float = 0.7
    seed: int | None = None
    timeout: float = 60.0
    max_in_flight: int = 4
    retries: int = 2

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise ValueError("timeout must be > 0")
        if self.retries < 0:
            raise ValueError("retries must be >= 0")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")

    @classmethod
    def from_file(cls, path: str | Path) -> "BackendConfig":
        with open(path, encoding="utf-8") as fh:
            return cls(**json.load(fh))


@dataclass(frozen=True)
class GenerationResult:
    record_index: int
    product_name: str
    product_category: str
    about_product: str
    condition: str
    model: str
    source_label: str
    description: str | None
    error: str | None
    request_ts: str
    response_ts: str

    def __post_init__(self) -> None:
        if (self.description is None) == (self.error is None):
            raise ValueError("exactly one of description/error must be set")

    def as_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)


def build_prompt(rec: ProductRecord, condition: str) -> str:
    """Render the generation prompt for one record and condition."""
    if condition not in CONDITIONS:
        raise ValueError(f"unknown condition: {condition!r}")
    violations = validate_record(rec)
    if violations:
        raise ValueError(f"invalid record {rec.product_name!r}: {violations}")
    header = PROMPT_HEADER.format(
        product_name=rec.product_name,
        product_category=rec.product_category,
        about_product=rec.about_product,
    )
    example = EXAMPLE_BLOCK if condition == "with_sample" else ""
    return header + example + INSTRUCTION_BLOCK


def source_label_for(model: str, condition: str) -> str:
    """Comparison-row label: the bare model id, or "<model> (Sample)"."""
    return f"{model} (Sample)" if condition == "with_sample" else model


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


def generate(
    backend: BackendConfig,
    prompt: str,
    session: requests.Session | None = None,
) -> tuple[str | None, str | None]:
    """One completion request with bounded retries.

    Returns (text, None) on success or (None, error) after the retry
    budget is exhausted; callers wrap this into a GenerationResult.
    """
    session = session or requests
    payload: dict = {
        "model": backend.model,
        "messages": [{"role": "user", "content": prompt}],
        "max_tokens": backend.max_tokens,
        "temperature": backend.temperature,
    }
    if backend.seed is not None:
        payload["seed"] = backend.seed
    headers = {}
    api_key = os.environ.get(API_KEY_ENV)
    if api_key:
        headers["Authorization"] = f"Bearer {api_key}"

    last_error = "no attempt made"
    for attempt in range(backend.retries + 1):
        try:
            resp = session.post(
                backend.url, json=payload, headers=headers, timeout=backend.timeout
            )
            resp.raise_for_status()
        except requests.RequestException as exc:
            last_error = f"attempt {attempt + 1}: {exc}"
            if attempt < backend.retries:
                time.sleep(min(0.1 * 2**attempt, 2.0))
            continue
        try:
            body = resp.json()
            text = body["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError):
            return None, f"malformed response body: {resp.text[:200]!r}"
        return str(text).strip(), None
    return None, last_error


def _result_key(record_index: int, condition: str) -> tuple[int, str]:
    return (record_index, condition)


def _load_done_keys(path: Path) -> set[tuple[int, str]]:
    done = set()
    if path.is_file():
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                row = json.loads(line)
                done.add((int(row["record_index"]), str(row["condition"])))
    return done


def run_batch(
    records: list[ProductRecord],
    backend: BackendConfig,
    conditions: tuple[str, ...] = CONDITIONS,
    out_path: str | Path = "generated.jsonl",
    resume: bool = False,
) -> list[GenerationResult]:
    """Attempt every (record, condition) pair once, streaming to JSONL.

    With ``resume`` pairs already present in the output file are
    skipped. Returned results are ordered by (record index, condition)
    regardless of completion order and cover only this run's attempts.
    """
    if not records:
        raise ValueError("no records to generate for")
    out_path = Path(out_path)
    done = _load_done_keys(out_path) if resume else set()
    try:
        out_fh = open(out_path, "a", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot open output file {out_path}: {exc}") from exc

    tasks = [
        (idx, rec, cond)
        for idx, rec in enumerate(records)
        for cond in conditions
        if _result_key(idx, cond) not in done
    ]
    write_lock = threading.Lock()
    session = requests.Session()

    def worker(task: tuple[int, ProductRecord, str]) -> GenerationResult:
        idx, rec, cond = task
        request_ts = _utcnow()
        try:
            prompt = build_prompt(rec, cond)
            text, error = generate(backend, prompt, session=session)
        except ValueError as exc:
            text, error = None, str(exc)
        result = GenerationResult(
            record_index=idx,
            product_name=rec.product_name,
            product_category=rec.product_category,
            about_product=rec.about_product,
            condition=cond,
            model=backend.model,
            source_label=source_label_for(backend.model, cond),
            description=text,
            error=error,
            request_ts=request_ts,
            response_ts=_utcnow(),
        )
        with write_lock:
            out_fh.write(result.as_json() + "\n")
            out_fh.flush()
        return result

    try:
        with ThreadPoolExecutor(max_workers=backend.max_in_flight) as pool:
            results = list(pool.map(worker, tasks))
    finally:
        out_fh.close()
    cond_order = {c: i for i, c in enumerate(conditions)}
    results.sort(key=lambda r: (r.record_index, cond_order[r.condition]))
    return results
