import pytest

from tweetlex.lexicon import load_lexicon
from tweetlex.preprocess import default_stopwords_path, load_stopwords
from tweetlex.spatial import default_gazetteer_path, load_gazetteer

import corpus_gen


@pytest.fixture(scope="session")
def toy_lexicon_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("lex") / "toy_lexicon.txt"
    corpus_gen.write_toy_lexicon(path)
    return path


@pytest.fixture(scope="session")
def toy_lexicon(toy_lexicon_path):
    return load_lexicon(toy_lexicon_path)


@pytest.fixture(scope="session")
def bundled_stopwords():
    return load_stopwords(default_stopwords_path())


@pytest.fixture(scope="session")
def bundled_gazetteer():
    return load_gazetteer(default_gazetteer_path())
