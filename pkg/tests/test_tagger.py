"""Labeling rules: max-count channels, neutral fallback, tie semantics."""

import pytest
from hypothesis import given, strategies as st

from tweetlex import _kernels
from tweetlex.lexicon import Category
from tweetlex.preprocess import CleanTweet
from tweetlex.tagger import (
    EMOTION_LABELS,
    NEUTRAL,
    OVERALL_LABELS,
    SENTIMENT_LABELS,
    CategoryCounts,
    _argmax,
    count_categories,
    label,
    tag_tokens,
    tag_tweet,
)

from corpus_gen import TOY_LEXICON


def _counts(**named) -> CategoryCounts:
    vector = [0] * len(Category)
    for name, value in named.items():
        vector[int(Category[name.upper()])] = value
    return CategoryCounts.from_vector(vector)


def _clean(tokens) -> CleanTweet:
    return CleanTweet("t1", list(tokens), [], [], [], not tokens)


def test_label_order_constants():
    assert SENTIMENT_LABELS == ("positive", "negative", "neutral")
    assert EMOTION_LABELS == ("joy", "trust", "anticipation", "surprise",
                              "fear", "sadness", "anger", "disgust", "neutral")
    assert OVERALL_LABELS == ("positive", "negative", "joy", "trust",
                              "anticipation", "surprise", "fear", "sadness",
                              "anger", "disgust", "neutral")


LABEL_CASES = [
    # counts, sentiment, emotion, overall, tied
    (dict(positive=2, joy=1, trust=1), "positive", "joy", "positive", True),
    (dict(negative=3, sadness=3), "negative", "sadness", "negative", True),
    (dict(), "neutral", "neutral", "neutral", False),
    (dict(joy=1), "neutral", "joy", "joy", False),
    (dict(positive=1, negative=1), "positive", "neutral", "positive", True),
    (dict(fear=2, sadness=2), "neutral", "fear", "fear", True),
    (dict(anger=1, disgust=1), "neutral", "anger", "anger", True),
    (dict(positive=1, joy=2), "positive", "joy", "joy", False),
    (dict(negative=1, trust=1, anticipation=1), "negative", "trust", "negative", True),
    (dict(surprise=5), "neutral", "surprise", "surprise", False),
]


@pytest.mark.parametrize("named,sent,emo,overall,tied", LABEL_CASES)
def test_label_table(named, sent, emo, overall, tied):
    got = label(_counts(**named))
    assert got == (sent, emo, overall, tied)


class TestCategoryCounts:
    def test_vector_round_trip(self):
        vec = list(range(10))
        cc = CategoryCounts.from_vector(vec)
        assert cc.vector() == vec
        assert cc.total == sum(vec)
        assert cc[Category.POSITIVE] == 0
        assert cc[Category.DISGUST] == 9

    def test_every_category_key_present(self):
        cc = CategoryCounts.from_vector([0] * 10)
        assert set(cc.counts) == set(Category)


class TestTagTweet:
    def test_hand_traced_example(self, toy_lexicon):
        # good: positive+joy; love: positive+joy+trust; bad: negative+sadness.
        result = tag_tweet(_clean(["good", "love", "bad"]), toy_lexicon)
        assert result.counts[Category.POSITIVE] == 2
        assert result.counts[Category.JOY] == 2
        assert result.counts[Category.NEGATIVE] == 1
        assert result.sentiment_label == "positive"
        assert result.emotion_label == "joy"
        # overall ties positive(2) against joy(2); sentiments come first.
        assert result.overall_label == "positive"
        assert result.tied is True

    def test_cross_channel_tie(self, toy_lexicon):
        # hope: positive+anticipation+trust; fear: negative+fear.
        result = tag_tweet(_clean(["hope", "fear"]), toy_lexicon)
        assert result.sentiment_label == "positive"
        assert result.emotion_label == "trust"
        assert result.overall_label == "positive"
        assert result.tied is True

    def test_unknown_tokens_are_neutral(self, toy_lexicon):
        result = tag_tweet(_clean(["zzyzx", "qwerty"]), toy_lexicon)
        assert (result.sentiment_label, result.emotion_label,
                result.overall_label) == (NEUTRAL, NEUTRAL, NEUTRAL)
        assert result.tied is False
        assert result.counts.total == 0

    def test_blank_tweet_is_neutral(self, toy_lexicon):
        result = tag_tweet(_clean([]), toy_lexicon)
        assert result.overall_label == NEUTRAL
        assert result.record_id == "t1"

    def test_repeated_tokens_count_each_occurrence(self, toy_lexicon):
        # fine: positive only; bad: negative+sadness.  positive reaches 2
        # with no other category matching it, so no channel ties.
        result = tag_tweet(_clean(["fine", "fine", "bad"]), toy_lexicon)
        assert result.counts[Category.POSITIVE] == 2
        assert result.counts[Category.NEGATIVE] == 1
        assert result.sentiment_label == "positive"
        assert result.emotion_label == "sadness"
        assert result.tied is False


_tokens = st.lists(
    st.sampled_from(sorted(TOY_LEXICON) + ["gst", "rollout", "zzz"]),
    max_size=12,
)


@given(tokens=_tokens)
def test_count_categories_agrees_with_kernel(tokens, toy_lexicon):
    via_pairs = count_categories(tag_tokens(tokens, toy_lexicon))
    assert via_pairs.vector() == _kernels.count_masks(tokens, toy_lexicon.masks)


def _naive_argmax(vector, indices):
    mx = max(vector[i] for i in indices)
    if mx == 0:
        return None, False
    winners = [i for i in indices if vector[i] == mx]
    return winners[0], len(winners) >= 2


_IDX_SETS = (
    tuple(int(c) for c in Category),
    (0, 1),
    tuple(range(2, 10)),
)


@given(
    vector=st.lists(st.integers(0, 5), min_size=10, max_size=10),
    indices=st.sampled_from(_IDX_SETS),
)
def test_argmax_matches_naive_reimplementation(vector, indices):
    assert _argmax(vector, indices) == _naive_argmax(vector, indices)


@given(vector=st.lists(st.integers(0, 5), min_size=10, max_size=10))
def test_label_channels_consistent(vector):
    sent, emo, overall, tied = label(CategoryCounts.from_vector(vector))
    assert sent in SENTIMENT_LABELS
    assert emo in EMOTION_LABELS
    assert overall in OVERALL_LABELS
    if sent == NEUTRAL and emo == NEUTRAL:
        assert overall == NEUTRAL
        assert tied is False
    if overall == NEUTRAL:
        assert sent == NEUTRAL and emo == NEUTRAL
