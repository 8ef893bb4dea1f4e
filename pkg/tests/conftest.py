import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import corpusgen  # noqa: E402

from sentlen import default_lemma_lexicon, default_stopwords  # noqa: E402
from sentlen.harness import AnalysisConfig, analyze_corpus  # noqa: E402

EXCERPT = (
    "To Sherlock Holmes she is always the woman. I have seldom heard him "
    "mention her under any other name. In his eyes she eclipses and "
    "predominates the whole of her sex. It was not that he felt any "
    "emotion akin to love for Irene Adler."
)


@pytest.fixture(scope="session")
def stops():
    return default_stopwords()


@pytest.fixture(scope="session")
def lexicon():
    return default_lemma_lexicon()


@pytest.fixture(scope="session")
def excerpt_text():
    return EXCERPT


@pytest.fixture(scope="session")
def corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    corpusgen.write_corpus(d, n_books=12)
    return d


@pytest.fixture(scope="session")
def small_corpus_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("small_corpus")
    corpusgen.write_corpus(d, n_books=2)
    return d


@pytest.fixture(scope="session")
def corpus_config():
    return AnalysisConfig()


@pytest.fixture(scope="session")
def corpus_results(corpus_dir, corpus_config):
    return analyze_corpus(corpus_dir, corpus_config)
