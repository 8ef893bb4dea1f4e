"""Sentence-length time-series toolkit.

Maps a book into six sentence-length series (words/characters, with
stopword removal and lemmatization variants) and quantifies their
mutual robustness via linear and rank correlation, two-sample
Kolmogorov-Smirnov comparison, and detrended fluctuation analysis.
"""

from .exceptions import DegenerateInputError, IngestionError, SentlenError
from .series import CANONICAL_ORDER, LengthSeries, MeasureKind, extract_all, extract_series
from .textpipe import (
    Document,
    LemmaLexicon,
    Sentence,
    StopwordList,
    Token,
    default_lemma_lexicon,
    default_stopwords,
    lemmatize,
    load_document,
    remove_stopwords,
    segment_sentences,
    tokenize,
)

__all__ = [
    "CANONICAL_ORDER",
    "DegenerateInputError",
    "Document",
    "IngestionError",
    "LemmaLexicon",
    "LengthSeries",
    "MeasureKind",
    "Sentence",
    "SentlenError",
    "StopwordList",
    "Token",
    "default_lemma_lexicon",
    "default_stopwords",
    "extract_all",
    "extract_series",
    "lemmatize",
    "load_document",
    "remove_stopwords",
    "segment_sentences",
    "tokenize",
]

__version__ = "0.1.0"
