"""Per-word category tagging, count mapping, and max-count labeling.

Each tweet gets three labels:

* sentiment: argmax over {positive, negative}, ``neutral`` when both are 0,
  ties broken toward positive;
* emotion: argmax over the eight emotions, ``neutral`` when all are 0, ties
  broken in the canonical order joy, trust, anticipation, surprise, fear,
  sadness, anger, disgust;
* overall: argmax over all ten categories, ties broken sentiments-first
  then the emotion order above.

``tied`` is set when any of the applied argmaxes had two or more maximal
categories.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .lexicon import EMOTIONS, SENTIMENTS, Category, Lexicon
from .preprocess import CleanTweet

NEUTRAL = "neutral"

#: Channel label orders used throughout reports.
SENTIMENT_LABELS = tuple(c.label for c in SENTIMENTS) + (NEUTRAL,)
EMOTION_LABELS = tuple(c.label for c in EMOTIONS) + (NEUTRAL,)
OVERALL_LABELS = tuple(c.label for c in Category) + (NEUTRAL,)

_SENTIMENT_IDX = tuple(int(c) for c in SENTIMENTS)
_EMOTION_IDX = tuple(int(c) for c in EMOTIONS)
_ALL_IDX = tuple(int(c) for c in Category)


@dataclass(frozen=True)
class CategoryCounts:
    """Association counts for all ten categories (every key present)."""

    counts: dict[Category, int]

    @classmethod
    def from_vector(cls, vector: list[int]) -> "CategoryCounts":
        return cls({c: vector[int(c)] for c in Category})

    def vector(self) -> list[int]:
        return [self.counts[c] for c in Category]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, category: Category) -> int:
        return self.counts[category]


@dataclass(frozen=True)
class TagResult:
    """Counts plus the three channel labels for one tweet."""

    record_id: str
    counts: CategoryCounts
    sentiment_label: str
    emotion_label: str
    overall_label: str
    tied: bool


def tag_tokens(tokens: list[str], lex: Lexicon) -> list[tuple[str, frozenset[Category]]]:
    """Pair each token occurrence with its lexicon categories (empty set
    for unknown words)."""
    return [(tok, lex.categories_of(tok)) for tok in tokens]


def count_categories(tagged: list[tuple[str, frozenset[Category]]]) -> CategoryCounts:
    """Count how many token occurrences carry each category."""
    vector = [0] * len(Category)
    for _tok, cats in tagged:
        for cat in cats:
            vector[int(cat)] += 1
    return CategoryCounts.from_vector(vector)


def _argmax(vector: list[int], indices: tuple[int, ...]) -> tuple[int | None, bool]:
    """First maximal index in canonical order, or None when all zero;
    second element flags a tie (2+ maximal)."""
    best = 0
    winner = None
    tie = False
    for i in indices:
        c = vector[i]
        if c > best:
            best = c
            winner = i
            tie = False
        elif c == best and c > 0:
            tie = True
    return winner, tie


def _label_vector(vector: list[int]) -> tuple[str, str, str, bool]:
    s_idx, s_tie = _argmax(vector, _SENTIMENT_IDX)
    e_idx, e_tie = _argmax(vector, _EMOTION_IDX)
    o_idx, o_tie = _argmax(vector, _ALL_IDX)
    sentiment = Category(s_idx).label if s_idx is not None else NEUTRAL
    emotion = Category(e_idx).label if e_idx is not None else NEUTRAL
    overall = Category(o_idx).label if o_idx is not None else NEUTRAL
    return sentiment, emotion, overall, s_tie or e_tie or o_tie


def label(counts: CategoryCounts) -> tuple[str, str, str, bool]:
    """(sentiment, emotion, overall, tied) for one tweet's counts."""
    return _label_vector(counts.vector())


def tag_tweet(clean: CleanTweet, lex: Lexicon) -> TagResult:
    """Tag one preprocessed tweet; blank tweets come out all-neutral."""
    vector = _kernels.count_masks(clean.tokens, lex.masks)
    sentiment, emotion, overall, tied = _label_vector(vector)
    return TagResult(
        record_id=clean.record_id,
        counts=CategoryCounts.from_vector(vector),
        sentiment_label=sentiment,
        emotion_label=emotion,
        overall_label=overall,
        tied=tied,
    )
