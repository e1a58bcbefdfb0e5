"""The seven quality metrics for one product description.

All metrics are pure functions over a tokenized :class:`Document` plus a
:class:`LexiconSet` (and the product category for the SEO score), so
they are deterministic and safe to evaluate from any number of workers.
The optional remote sentiment path calls an external HTTP classifier.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import TYPE_CHECKING

import requests

from .lexicon import LexiconSet
from .text_core import Document, TextStats, compute_stats, tokenize

if TYPE_CHECKING:
    from .ingest import ProductRecord

__all__ = [
    "ScoreVector",
    "SentimentClient",
    "RemoteSentimentError",
    "readability_fk",
    "persuasiveness",
    "seo_score",
    "clarity",
    "emotional_appeal",
    "cta_effectiveness",
    "sentiment_lexicon",
    "sentiment_remote",
    "score_all",
]

log = logging.getLogger(__name__)

# Default documentation/config identifier for the remote classifier.
DEFAULT_SENTIMENT_MODEL = "distilbert-base-uncased-finetuned-sst-2-english"

NEGATION_WINDOW = 3  # word tokens, within the same sentence


@dataclass(frozen=True)
class ScoreVector:
    sentiment: float  # [0, 1]
    readability: float  # FK grade level, unbounded
    persuasiveness: float  # [0, 1]
    seo: float  # [0, 1]
    clarity: float  # > 0
    emotional_appeal: float  # [0, 1]
    cta: int  # raw phrase count >= 0

    FIELDS = (
        "sentiment",
        "readability",
        "persuasiveness",
        "seo",
        "clarity",
        "emotional_appeal",
        "cta",
    )

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.FIELDS}


def readability_fk(stats: TextStats) -> float:
    """Flesch-Kincaid grade level; negatives are reported as-is."""
    if stats.word_count < 1 or stats.sentence_count < 1:
        raise ValueError("empty description")
    return (
        0.39 * (stats.word_count / stats.sentence_count)
        + 11.8 * (stats.syllable_count / stats.word_count)
        - 15.59
    )


def _require_words(doc: Document) -> tuple:
    words = doc.word_tokens
    if not words:
        raise ValueError("empty description")
    return words


def persuasiveness(doc: Document, lex: LexiconSet) -> float:
    """Persuasive words per word, counted with multiplicity."""
    words = _require_words(doc)
    hits = sum(1 for t in words if t.normalized in lex.persuasive)
    return hits / len(words)


def seo_score(doc: Document, category: str, lex: LexiconSet) -> float:
    """Density of category-derived keywords in the description.

    Keywords are the category's word tokens (split on ``|`` and
    whitespace, lowercased) minus stopwords, deduplicated. Logs a
    warning and returns 0 when no usable keyword remains.
    """
    words = _require_words(doc)
    keywords = category_keywords(category, lex)
    if not keywords:
        log.warning("no usable category keywords in %r; SEO score is 0", category)
        return 0.0
    hits = sum(1 for t in words if t.normalized in keywords)
    return min(hits / len(words), 1.0)


def category_keywords(category: str, lex: LexiconSet) -> frozenset[str]:
    tokens = [
        t.normalized
        for part in category.split("|")
        for t in tokenize(part).word_tokens
    ]
    return frozenset(t for t in tokens if t not in lex.stopwords)


def clarity(stats: TextStats) -> float:
    """Inverse of the average word length."""
    if stats.word_count < 1:
        raise ValueError("empty description")
    return 1.0 / stats.avg_word_length


def emotional_appeal(doc: Document, lex: LexiconSet) -> float:
    """Emotion-word occurrences per word."""
    words = _require_words(doc)
    hits = sum(1 for t in words if t.normalized in lex.emotion)
    return hits / len(words)


def cta_effectiveness(doc: Document, lex: LexiconSet) -> int:
    """Non-overlapping CTA phrase occurrences in the token stream.

    Matching is case-insensitive over normalized tokens, longest phrase
    first and leftmost first among equal lengths; punctuation tokens
    between phrase words break a match because they can never equal a
    phrase word.
    """
    _require_words(doc)
    stream = [t.normalized for t in doc.tokens]
    phrases = sorted(
        {tuple(t.normalized for t in tokenize(p).word_tokens) for p in lex.cta_phrases}
    )
    phrases = [p for p in phrases if p]
    consumed = [False] * len(stream)
    count = 0
    for length in sorted({len(p) for p in phrases}, reverse=True):
        same_len = [p for p in phrases if len(p) == length]
        for start in range(len(stream) - length + 1):
            if any(consumed[start : start + length]):
                continue
            window = tuple(stream[start : start + length])
            for phrase in same_len:
                if window == phrase:
                    for i in range(start, start + length):
                        consumed[i] = True
                    count += 1
                    break
    return count


def sentiment_lexicon(doc: Document, lex: LexiconSet) -> float:
    """Rule-based sentiment in [0, 1]; 0.5 is neutral.

    A valence word preceded within NEGATION_WINDOW word tokens (same
    sentence) by a negator has its polarity flipped.
    """
    _require_words(doc)
    pos = neg = 0
    for sent in doc.sentences:
        sent_words = [t for t in doc.tokens[sent.start : sent.end] if t.is_word]
        for i, tok in enumerate(sent_words):
            polarity = lex.valence.get(tok.normalized)
            if polarity is None:
                continue
            window = sent_words[max(0, i - NEGATION_WINDOW) : i]
            if any(w.normalized in lex.negators for w in window):
                polarity = -polarity
            if polarity > 0:
                pos += 1
            else:
                neg += 1
    total = pos + neg
    if total == 0:
        return 0.5
    return 0.5 + 0.5 * (pos - neg) / total


class RemoteSentimentError(RuntimeError):
    """Remote classifier failed after exhausting retries."""


class SentimentClient:
    """HTTP client for a binary sentiment classifier.

    Wire contract: POST ``{"text": ...}`` to ``url``; response
    ``{"label": "positive"|"negative", "score": <0..1>}``.
    """

    def __init__(
        self,
        url: str,
        timeout: float = 30.0,
        retries: int = 2,
        max_input_tokens: int = 512,
        model: str = DEFAULT_SENTIMENT_MODEL,
    ):
        self.url = url
        self.timeout = timeout
        self.retries = retries
        self.max_input_tokens = max_input_tokens
        self.model = model
        self._session = requests.Session()

    def classify(self, text: str) -> float:
        """Positive-class probability in [0, 1]."""
        truncated = " ".join(text.split()[: self.max_input_tokens])
        last_error: Exception | None = None
        for attempt in range(self.retries + 1):
            try:
                resp = self._session.post(
                    self.url, json={"text": truncated}, timeout=self.timeout
                )
                resp.raise_for_status()
            except requests.RequestException as exc:
                last_error = exc
                if attempt < self.retries:
                    time.sleep(min(0.1 * 2**attempt, 2.0))
                continue
            return _parse_sentiment_response(resp)
        raise RemoteSentimentError(f"sentiment request failed: {last_error}")


def _parse_sentiment_response(resp: requests.Response) -> float:
    try:
        body = resp.json()
        label = str(body["label"]).lower()
        score = float(body["score"])
    except (ValueError, KeyError, TypeError) as exc:
        raise ValueError(f"malformed sentiment response: {resp.text[:200]!r}") from exc
    if label not in ("positive", "negative") or not 0.0 <= score <= 1.0:
        raise ValueError(f"malformed sentiment response: {body!r}")
    return score if label == "positive" else 1.0 - score


def sentiment_remote(raw: str, client: SentimentClient) -> float:
    return client.classify(raw)


def score_all(
    record: "ProductRecord",
    lex: LexiconSet,
    sentiment_mode: str = "lexicon",
    sentiment_client: SentimentClient | None = None,
) -> ScoreVector:
    """All seven metrics for one record."""
    doc = tokenize(record.description)
    stats = compute_stats(doc)  # raises "empty description" on no words
    if sentiment_mode == "lexicon":
        sentiment = sentiment_lexicon(doc, lex)
    elif sentiment_mode == "remote":
        if sentiment_client is None:
            raise ValueError("sentiment_mode='remote' requires a SentimentClient")
        sentiment = sentiment_remote(record.description, sentiment_client)
    else:
        raise ValueError(f"unknown sentiment mode: {sentiment_mode!r}")
    return ScoreVector(
        sentiment=sentiment,
        readability=readability_fk(stats),
        persuasiveness=persuasiveness(doc, lex),
        seo=seo_score(doc, record.product_category, lex),
        clarity=clarity(stats),
        emotional_appeal=emotional_appeal(doc, lex),
        cta=cta_effectiveness(doc, lex),
    )
