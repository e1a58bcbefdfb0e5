"""Deterministic text normalization: tokens, sentences, syllables, stats.

Everything downstream (readability, lexicon ratios, phrase matching)
consumes the structures built here, so the rules are deliberately simple
and fully deterministic:

- word tokens keep intra-word apostrophes and hyphens ("don't", "2-4")
  and an optional trailing "+" ("13+"); runs of other non-space
  characters become punctuation tokens
- sentences end after a run of ``.``, ``!``, ``?`` that is followed by
  whitespace or end-of-text; trailing unterminated material forms a
  final sentence
- syllables are vowel groups (a, e, i, o, u, y) with a silent-e
  discount, clamped to at least 1 per word
"""

from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = [
    "Token",
    "Sentence",
    "Document",
    "TextStats",
    "tokenize",
    "count_syllables",
    "compute_stats",
]

# Word: alphanumeric runs joined by internal apostrophes/hyphens, with an
# optional trailing "+" so marketing fragments like "Ages 13+" keep the
# "+" attached. Anything else non-space is a punctuation run.
_TOKEN_RE = re.compile(
    r"(?P<word>[^\W_]+(?:['’\-][^\W_]+)*\+?)"
    r"|(?P<punct>[^\w\s]+|_+)",
    re.UNICODE,
)

_TERMINATOR_CHARS = frozenset(".!?")

_VOWELS = frozenset("aeiouy")


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    is_word: bool
    start: int  # character offset into the original text
    end: int


@dataclass(frozen=True)
class Sentence:
    """Half-open token index span [start, end)."""

    start: int
    end: int


@dataclass(frozen=True)
class Document:
    original: str
    tokens: tuple[Token, ...]
    sentences: tuple[Sentence, ...]

    @property
    def word_tokens(self) -> tuple[Token, ...]:
        return tuple(t for t in self.tokens if t.is_word)

    def reconstruct(self) -> str:
        """Token surfaces in order with inter-token whitespace collapsed."""
        parts: list[str] = []
        prev_end = None
        for tok in self.tokens:
            if prev_end is not None:
                parts.append(" " if tok.start > prev_end else "")
            parts.append(tok.surface)
            prev_end = tok.end
        return "".join(parts)


@dataclass(frozen=True)
class TextStats:
    word_count: int
    sentence_count: int
    syllable_count: int
    word_char_count: int

    @property
    def avg_word_length(self) -> float:
        return self.word_char_count / self.word_count


def _is_word(surface: str) -> bool:
    # Digit-only tokens count as words: marketing copy is number-heavy
    # ("2-4 players") and dropping them would distort the ratios.
    return any(ch.isalnum() for ch in surface)


def tokenize(raw: str) -> Document:
    """Split text into tokens and sentence spans.

    Empty input yields a document with zero tokens and zero sentences.
    """
    tokens: list[Token] = []
    for m in _TOKEN_RE.finditer(raw):
        surface = m.group(0)
        tokens.append(
            Token(
                surface=surface,
                normalized=surface.lower(),
                is_word=_is_word(surface),
                start=m.start(),
                end=m.end(),
            )
        )

    sentences: list[Sentence] = []
    sent_start = 0
    for i, tok in enumerate(tokens):
        if tok.is_word:
            continue
        if not set(tok.surface) <= _TERMINATOR_CHARS:
            continue
        # Terminator run only counts when followed by whitespace/end-of-text.
        if tok.end < len(raw) and not raw[tok.end].isspace():
            continue
        sentences.append(Sentence(sent_start, i + 1))
        sent_start = i + 1
    if sent_start < len(tokens):
        sentences.append(Sentence(sent_start, len(tokens)))

    return Document(original=raw, tokens=tuple(tokens), sentences=tuple(sentences))


def count_syllables(word: str) -> int:
    """Vowel-group syllable count for a normalized word.

    Maximal runs of a/e/i/o/u/y count as one group each; a final silent
    "e" (not "le") drops one group; the result is clamped to >= 1 so
    vowel-less tokens like "45" still contribute a syllable.
    """
    if not word:
        raise ValueError("empty word")
    word = word.lower()
    groups = 0
    in_group = False
    for ch in word:
        if ch in _VOWELS:
            if not in_group:
                groups += 1
            in_group = True
        else:
            in_group = False
    if groups >= 2 and word.endswith("e") and not word.endswith("le"):
        groups -= 1
    return max(groups, 1)


def compute_stats(doc: Document) -> TextStats:
    """Summary statistics over word tokens only."""
    words = doc.word_tokens
    if not words:
        raise ValueError("empty description")
    syllables = sum(count_syllables(t.normalized) for t in words)
    chars = sum(1 for t in words for ch in t.surface if ch.isalnum())
    return TextStats(
        word_count=len(words),
        sentence_count=len(doc.sentences),
        syllable_count=syllables,
        word_char_count=chars,
    )
