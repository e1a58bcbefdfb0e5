"""Word/phrase lists backing the lexicon metrics.

The lists are versioned artifacts shipped under ``copygrade/lexicons/``,
one term per line, ``#`` comments and blank lines ignored. Matching
everywhere is exact-token (no stemming): "guarantee" does not match
"guaranteed".
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

__all__ = [
    "LexiconError",
    "LexiconSet",
    "load_lexicon_file",
    "load_lexicon_dir",
    "default_lexicons",
    "LEXICON_FILES",
]

# filename -> maximum tokens per term (phrases allowed only for CTA)
LEXICON_FILES = {
    "persuasive.txt": 1,
    "emotion.txt": 1,
    "cta.txt": 5,
    "valence_pos.txt": 1,
    "valence_neg.txt": 1,
    "negators.txt": 1,
    "stopwords.txt": 1,
}


class LexiconError(ValueError):
    """Raised for malformed or missing lexicon files."""


@dataclass(frozen=True)
class LexiconSet:
    persuasive: frozenset[str]
    emotion: frozenset[str]
    cta_phrases: tuple[str, ...]
    valence: dict[str, int] = field(default_factory=dict)  # word -> +1 / -1
    negators: frozenset[str] = frozenset()
    stopwords: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        overlap = set(self.valence) & self.negators
        if overlap:
            raise LexiconError(
                "valence words may not also be negators: %s" % sorted(overlap)
            )


def load_lexicon_file(path: str | Path, max_tokens: int | None = None) -> list[str]:
    """Load one term per line, lowercased, whitespace-normalized, deduped.

    ``max_tokens`` bounds the token length of each term (5 for the CTA
    phrase file, 1 for plain word lists); violations report the line
    number.
    """
    path = Path(path)
    if not path.is_file():
        raise LexiconError(f"lexicon file not found: {path}")
    try:
        text = path.read_text(encoding="utf-8", errors="strict")
    except UnicodeDecodeError as exc:
        raise LexiconError(f"{path} is not valid UTF-8: {exc}") from exc
    return parse_lexicon_lines(text.splitlines(), max_tokens=max_tokens, name=str(path))


def parse_lexicon_lines(
    lines: list[str], max_tokens: int | None = None, name: str = "<lexicon>"
) -> list[str]:
    terms: list[str] = []
    seen: set[str] = set()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        term = " ".join(stripped.lower().split())
        n_tokens = len(term.split())
        if max_tokens is not None and n_tokens > max_tokens:
            raise LexiconError(
                f"{name}, line {lineno}: term has {n_tokens} tokens "
                f"(maximum {max_tokens}): {term!r}"
            )
        if term not in seen:
            seen.add(term)
            terms.append(term)
    return terms


def load_lexicon_dir(directory: str | Path) -> LexiconSet:
    """Build a LexiconSet from the seven files in ``directory``."""
    directory = Path(directory)
    loaded = {
        name: load_lexicon_file(directory / name, max_tokens=max_tokens)
        for name, max_tokens in LEXICON_FILES.items()
    }
    valence: dict[str, int] = {w: +1 for w in loaded["valence_pos.txt"]}
    for w in loaded["valence_neg.txt"]:
        valence[w] = -1
    return LexiconSet(
        persuasive=frozenset(loaded["persuasive.txt"]),
        emotion=frozenset(loaded["emotion.txt"]),
        cta_phrases=tuple(loaded["cta.txt"]),
        valence=valence,
        negators=frozenset(loaded["negators.txt"]),
        stopwords=frozenset(loaded["stopwords.txt"]),
    )


def default_lexicons() -> LexiconSet:
    """The shipped built-in lists; deterministic across runs and platforms."""
    with resources.as_file(resources.files("copygrade") / "lexicons") as directory:
        return load_lexicon_dir(directory)
