"""Raw tweet text -> clean token list plus extracted entities.

The cleaning chain, in fixed order:

1. extract and remove URLs, then mentions, then hashtags (URLs first so a
   ``#`` or ``@`` inside a link is never miscounted as a tag or mention);
2. lowercase;
3. replace every non-alphanumeric character with a space (covers
   punctuation, symbols, and underscores);
4. split on whitespace;
5. shorten runs of 3+ identical characters to 2;
6. drop tokens shorter than 3 characters and URL debris (tokens
   containing "http");
7. drop stopwords;
8. mark the tweet blank when no tokens remain.

Steps 2-7 run inside the kernel backend (compiled when available).
Non-Latin-script tokens are kept: they simply never match an English
lexicon, and runs report a tally of them so the data loss is visible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources

from . import _kernels
from .ingest import TweetRecord

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
# Platform handle/tag grammar: ASCII letters, digits, underscore.
_MENTION_RE = re.compile(r"@([A-Za-z0-9_]+)")
_HASHTAG_RE = re.compile(r"#([A-Za-z0-9_]+)")


@dataclass(frozen=True)
class CleanTweet:
    """Preprocessed tweet: ordered tokens plus the extracted entities.

    Hashtags keep their original case (case-folding for frequency merging
    happens in the entities module); mentions are lowercased.  Entity lists
    preserve occurrence multiplicity and text order.
    """

    record_id: str
    tokens: list[str]
    hashtags: list[str]
    mentions: list[str]
    urls: list[str]
    is_blank: bool


def extract_mentions(text: str) -> list[str]:
    """Every ``@handle`` occurrence, lowercased, in text order."""
    return [m.lower() for m in _MENTION_RE.findall(text)]


def extract_hashtags(text: str) -> list[str]:
    """Every ``#tag`` occurrence, original case, in text order."""
    return _HASHTAG_RE.findall(text)


def strip_urls(text: str) -> str:
    """Replace each http(s)/www URL with a single space."""
    return _URL_RE.sub(" ", text)


def collapse_repeats(token: str) -> str:
    """Shorten every run of 3+ identical characters to exactly 2."""
    return _kernels.collapse_repeats(token)


def preprocess(record: TweetRecord, stopwords: frozenset[str]) -> CleanTweet:
    """Run the full cleaning chain on one validated record."""
    urls: list[str] = []
    mentions: list[str] = []
    hashtags: list[str] = []

    def _take_url(m: re.Match) -> str:
        urls.append(m.group(0))
        return " "

    def _take_mention(m: re.Match) -> str:
        mentions.append(m.group(1).lower())
        return " "

    def _take_hashtag(m: re.Match) -> str:
        hashtags.append(m.group(1))
        return " "

    text = _URL_RE.sub(_take_url, record.text)
    text = _MENTION_RE.sub(_take_mention, text)
    text = _HASHTAG_RE.sub(_take_hashtag, text)
    tokens = _kernels.tokenize(text, stopwords)
    return CleanTweet(record.id, tokens, hashtags, mentions, urls, not tokens)


def count_non_ascii_tokens(tokens: list[str]) -> int:
    """Tokens containing at least one non-ASCII character (the run-level
    "non-Latin" tally)."""
    return sum(1 for t in tokens if not t.isascii())


def load_stopwords(path) -> frozenset[str]:
    """One stopword per line, ``#`` comments and blank lines ignored;
    entries are lowercased so they compare against normalized tokens."""
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            word = line.strip()
            if not word or word.startswith("#"):
                continue
            words.add(word.lower())
    return frozenset(words)


def default_stopwords_path():
    """Path to the English stopword list shipped with the package."""
    return resources.files("tweetlex.data") / "stopwords_en.txt"
