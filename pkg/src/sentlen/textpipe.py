"""Text ingestion pipeline: sentence segmentation, tokenization,
stopword removal and lexicon-driven lemmatization.

A sentence ends at every '.', '!' or '?'; runs of terminators collapse
to a single boundary.  Abbreviation periods are deliberately not
special-cased.
"""

from __future__ import annotations

import dataclasses
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .exceptions import IngestionError

TERMINATORS = ".!?"

_BOUNDARY_RE = re.compile(r"[.!?]+")
# alphanumeric, underscore excluded
_WORD_CHAR_RE = re.compile(r"[^\W_]", re.UNICODE)
_EDGE_STRIP_RE = re.compile(r"^[\W_]+|[\W_]+$", re.UNICODE)


@dataclass(frozen=True)
class Token:
    surface: str
    normalized: str
    lemma: str
    is_stop: bool = False


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    index: int

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Document:
    id: str
    sentences: tuple[Sentence, ...]

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)


class StopwordList:
    """Set of lowercase function words excluded by the non-stop measures."""

    def __init__(self, words=()):
        self.words = frozenset(w.lower() for w in words if w)

    def __contains__(self, word: str) -> bool:
        return word in self.words

    def __len__(self) -> int:
        return len(self.words)

    @classmethod
    def from_file(cls, path) -> "StopwordList":
        text = Path(path).read_text(encoding="utf-8")
        return cls(line.strip() for line in text.splitlines())


class LemmaLexicon:
    """Map from lowercase surface form to its dictionary lemma.

    Lookups fall back to the input form, so coverage gaps degrade to
    the identity mapping instead of failing.
    """

    def __init__(self, mapping=None):
        self.mapping = dict(mapping or {})

    def lemma_of(self, normalized: str) -> str:
        return self.mapping.get(normalized, normalized)

    def __len__(self) -> int:
        return len(self.mapping)

    @classmethod
    def from_file(cls, path) -> "LemmaLexicon":
        mapping = {}
        text = Path(path).read_text(encoding="utf-8")
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2 or not parts[0] or not parts[1]:
                raise IngestionError(
                    f"{path}:{lineno}: expected 'surface<TAB>lemma', got {line!r}"
                )
            mapping[parts[0].lower()] = parts[1].lower()
        return cls(mapping)


def default_stopwords() -> StopwordList:
    return StopwordList.from_file(resources.files("sentlen") / "data" / "stopwords.txt")


def default_lemma_lexicon() -> LemmaLexicon:
    return LemmaLexicon.from_file(resources.files("sentlen") / "data" / "lemmas.tsv")


def segment_sentences(text: str) -> list[str]:
    """Split text at every terminator character, dropping segments that
    contain no word characters (so "?!" or "..." yield one boundary)."""
    segments = _BOUNDARY_RE.split(text)
    return [seg for seg in segments if _WORD_CHAR_RE.search(seg)]


def tokenize(raw_sentence: str) -> list[Token]:
    """Whitespace-split, then strip leading/trailing non-alphanumerics
    from each piece.  Internal apostrophes and hyphens survive."""
    tokens = []
    for piece in raw_sentence.split():
        surface = _EDGE_STRIP_RE.sub("", piece)
        if not surface:
            continue
        normalized = surface.lower()
        tokens.append(Token(surface=surface, normalized=normalized, lemma=normalized))
    return tokens


def remove_stopwords(sentence: Sentence, stops: StopwordList) -> Sentence:
    kept = tuple(t for t in sentence.tokens if t.normalized not in stops)
    return Sentence(tokens=kept, index=sentence.index)


def lemmatize(sentence: Sentence, lexicon: LemmaLexicon) -> Sentence:
    tokens = tuple(
        dataclasses.replace(t, lemma=lexicon.lemma_of(t.normalized))
        for t in sentence.tokens
    )
    return Sentence(tokens=tokens, index=sentence.index)


def document_from_text(doc_id: str, text: str, stops: StopwordList,
                       lexicon: LemmaLexicon) -> Document:
    """Segment and tokenize `text`, annotating every token with its lemma
    and stopword status so all six measures can be read off later."""
    sentences = []
    for raw in segment_sentences(text):
        tokens = tuple(
            dataclasses.replace(
                t,
                lemma=lexicon.lemma_of(t.normalized),
                is_stop=t.normalized in stops,
            )
            for t in tokenize(raw)
        )
        if not tokens:
            continue
        sentences.append(Sentence(tokens=tokens, index=len(sentences)))
    return Document(id=doc_id, sentences=tuple(sentences))


def load_document(path, stops: StopwordList, lexicon: LemmaLexicon) -> Document:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise IngestionError(f"cannot read {path}: {exc}") from exc
    return document_from_text(path.stem, text, stops, lexicon)
