import string

import numpy as np
import pytest

from sentlen import (
    IngestionError,
    LemmaLexicon,
    StopwordList,
    lemmatize,
    load_document,
    remove_stopwords,
    segment_sentences,
    tokenize,
)
from sentlen.textpipe import Sentence, document_from_text


class TestSegmentation:
    def test_two_sentences(self):
        text = ("To Sherlock Holmes she is always the woman. I have seldom "
                "heard him mention her under any other name.")
        assert len(segment_sentences(text)) == 2

    def test_empty_input(self):
        assert segment_sentences("") == []

    def test_terminator_runs_collapse(self):
        segments = segment_sentences("Wait...! Go.")
        assert [s.strip() for s in segments] == ["Wait", "Go"]

    def test_abbreviations_are_not_special(self):
        # every period is a boundary, by design
        assert len(segment_sentences("Mr. Holmes spoke. She left.")) == 3

    def test_wordless_segments_dropped(self):
        assert segment_sentences("...?!  -- ") == []

    def test_totality_preserves_word_characters(self):
        rng = np.random.default_rng(42)
        alphabet = list(string.ascii_letters + string.digits + " .!?,;'\"-\n")
        for _ in range(50):
            text = "".join(rng.choice(alphabet, size=rng.integers(0, 200)))
            segments = segment_sentences(text)
            kept = "".join(c for s in segments for c in s if c.isalnum())
            original = "".join(c for c in text if c.isalnum())
            assert kept == original


class TestTokenize:
    def test_word_count(self):
        assert len(tokenize("To Sherlock Holmes she is always the woman")) == 8

    def test_whitespace_only(self):
        assert tokenize("   ") == []

    def test_internal_apostrophes_and_hyphens_survive(self):
        tokens = tokenize("it's half-done (really)")
        assert [t.surface for t in tokens] == ["it's", "half-done", "really"]

    def test_normalized_is_lowercased_surface(self):
        for t in tokenize("The QUICK Brown fox"):
            assert t.normalized == t.surface.lower()

    def test_punctuation_only_pieces_dropped(self):
        assert [t.surface for t in tokenize('"--" hello -- "')] == ["hello"]


class TestStopwords:
    def test_table_sentence_one(self, stops):
        sent = Sentence(tokens=tuple(
            tokenize("To Sherlock Holmes she is always the woman")), index=0)
        kept = remove_stopwords(sent, stops)
        assert [t.normalized for t in kept.tokens] == [
            "sherlock", "holmes", "always", "woman"]

    def test_table_sentence_two(self, stops):
        sent = Sentence(tokens=tuple(tokenize(
            "I have seldom heard him mention her under any other name")),
            index=0)
        kept = remove_stopwords(sent, stops)
        assert [t.normalized for t in kept.tokens] == [
            "seldom", "heard", "mention", "name"]

    def test_all_stopwords_removed(self, stops):
        sent = Sentence(tokens=tuple(tokenize("it was not the only own")),
                        index=3)
        kept = remove_stopwords(sent, stops)
        assert kept.tokens == ()
        assert kept.index == 3

    def test_idempotent(self, stops):
        sent = Sentence(tokens=tuple(tokenize(
            "In his eyes she eclipses and predominates the whole of her sex")),
            index=0)
        once = remove_stopwords(sent, stops)
        assert remove_stopwords(once, stops) == once


class TestLemmatize:
    def test_table_example(self, lexicon):
        sent = Sentence(tokens=tuple(tokenize("she is always the woman")),
                        index=0)
        out = lemmatize(sent, lexicon)
        assert [t.lemma for t in out.tokens] == [
            "she", "be", "always", "the", "woman"]

    def test_inflected_verbs(self, lexicon):
        sent = Sentence(tokens=tuple(tokenize("eclipses and predominates")),
                        index=0)
        out = lemmatize(sent, lexicon)
        assert [t.lemma for t in out.tokens] == [
            "eclipse", "and", "predominate"]

    def test_identity_fallback(self, lexicon):
        sent = Sentence(tokens=tuple(tokenize("sherlock xyzzy")), index=0)
        out = lemmatize(sent, lexicon)
        assert [t.lemma for t in out.tokens] == ["sherlock", "xyzzy"]

    def test_token_count_preserved(self, lexicon):
        sent = Sentence(tokens=tuple(tokenize(
            "It was not that he felt any emotion akin to love")), index=0)
        assert len(lemmatize(sent, lexicon).tokens) == len(sent.tokens)


class TestLoadDocument:
    def test_excerpt_has_four_sentences(self, tmp_path, stops, lexicon,
                                        excerpt_text):
        path = tmp_path / "excerpt.txt"
        path.write_text(excerpt_text, encoding="utf-8")
        doc = load_document(path, stops, lexicon)
        assert doc.id == "excerpt"
        assert doc.sentence_count == 4
        assert [s.index for s in doc.sentences] == [0, 1, 2, 3]

    def test_empty_file(self, tmp_path, stops, lexicon):
        path = tmp_path / "empty.txt"
        path.write_text("", encoding="utf-8")
        assert load_document(path, stops, lexicon).sentence_count == 0

    def test_trailing_unterminated_segment_kept(self, tmp_path, stops, lexicon):
        path = tmp_path / "frag.txt"
        path.write_text("hello world", encoding="utf-8")
        doc = load_document(path, stops, lexicon)
        assert doc.sentence_count == 1
        assert len(doc.sentences[0].tokens) == 2

    def test_missing_file(self, tmp_path, stops, lexicon):
        with pytest.raises(IngestionError):
            load_document(tmp_path / "nope.txt", stops, lexicon)

    def test_invalid_utf8(self, tmp_path, stops, lexicon):
        path = tmp_path / "bad.txt"
        path.write_bytes(b"\xff\xfe broken. text.")
        with pytest.raises(IngestionError):
            load_document(path, stops, lexicon)

    def test_tokens_carry_stop_status_and_lemma(self, stops, lexicon,
                                                excerpt_text):
        doc = document_from_text("x", excerpt_text, stops, lexicon)
        first = doc.sentences[0].tokens
        assert [t.is_stop for t in first] == [
            True, False, False, True, True, False, True, False]
        assert first[4].lemma == "be"


class TestResourceLoading:
    def test_stopword_file(self, tmp_path):
        path = tmp_path / "stops.txt"
        path.write_text("The\nand\n\nof\n", encoding="utf-8")
        stops = StopwordList.from_file(path)
        assert "the" in stops and "and" in stops and "of" in stops
        assert len(stops) == 3

    def test_lexicon_file(self, tmp_path):
        path = tmp_path / "lemmas.tsv"
        path.write_text("heard\thear\neyes\teye\n", encoding="utf-8")
        lex = LemmaLexicon.from_file(path)
        assert lex.lemma_of("heard") == "hear"
        assert lex.lemma_of("unknown") == "unknown"

    def test_malformed_lexicon_line(self, tmp_path):
        path = tmp_path / "lemmas.tsv"
        path.write_text("heard hear\n", encoding="utf-8")
        with pytest.raises(IngestionError):
            LemmaLexicon.from_file(path)
