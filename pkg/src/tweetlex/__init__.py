"""tweetlex: deterministic lexicon-based emotion analysis for tweet corpora.

The package turns a corpus of tweets (JSONL or CSV) into category counts,
per-tweet sentiment/emotion labels, daily and hourly activity buckets,
mention/hashtag frequency tables, and region-level aggregates.  Everything is
deterministic: the same inputs produce byte-identical output files.

Hot loops (tokenization and category counting) run through a small compiled
extension when it is available, with a pure-Python fallback that produces
identical results.  See tweetlex._kernels.BACKEND for which one is active.
"""

from .errors import (
    CorpusFormatError,
    GazetteerError,
    LexiconError,
    OracleMismatchError,
    TweetlexError,
)
from .lexicon import Category, Lexicon, load_lexicon
from .preprocess import CleanTweet, load_stopwords, preprocess
from .tagger import CategoryCounts, TagResult, label, tag_tweet
from ._kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Category",
    "CategoryCounts",
    "CleanTweet",
    "CorpusFormatError",
    "GazetteerError",
    "Lexicon",
    "LexiconError",
    "OracleMismatchError",
    "TagResult",
    "TweetlexError",
    "__version__",
    "label",
    "load_lexicon",
    "load_stopwords",
    "preprocess",
    "tag_tweet",
]
