"""copygrade: quality scoring for product-description marketing copy."""

from .ingest import ColumnMapping, ProductRecord, load_products, validate_record
from .lexicon import LexiconSet, default_lexicons, load_lexicon_dir, load_lexicon_file
from .metrics import ScoreVector, SentimentClient, score_all
from .report import CorpusReport, aggregate, highlight_best, render
from .text_core import Document, TextStats, compute_stats, count_syllables, tokenize

__version__ = "0.1.0"

__all__ = [
    "ColumnMapping",
    "ProductRecord",
    "load_products",
    "validate_record",
    "LexiconSet",
    "default_lexicons",
    "load_lexicon_dir",
    "load_lexicon_file",
    "ScoreVector",
    "SentimentClient",
    "score_all",
    "CorpusReport",
    "aggregate",
    "highlight_best",
    "render",
    "Document",
    "TextStats",
    "compute_stats",
    "count_syllables",
    "tokenize",
]
