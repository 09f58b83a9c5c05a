"""Kernel unit tests plus pure/compiled differential properties."""

import pytest
from hypothesis import given, settings, strategies as st

from tweetlex import _kernels
from tweetlex._kernels import available_backends, get_backend

BACKENDS = available_backends()


@pytest.fixture(params=BACKENDS)
def backend(request):
    return get_backend(request.param)


STOP = frozenset({"the", "and", "for"})


def test_both_backends_present_when_extension_built():
    # The pure fallback must always be importable.
    assert "pure" in BACKENDS


@pytest.mark.parametrize("raw,expected", [
    ("", ""),
    ("abc", "abc"),
    ("aabb", "aabb"),
    ("aaa", "aa"),
    ("aaaa", "aa"),
    ("aaabbbccc", "aabbcc"),
    ("ababab", "ababab"),
    ("xaaay", "xaay"),
    ("ееееда", "ееда"),  # Cyrillic е
    ("😀😀😀", "😀😀"),
])
def test_collapse_repeats(backend, raw, expected):
    assert backend.collapse_repeats(raw) == expected


@pytest.mark.parametrize("text,expected", [
    ("Hello world", ["hello", "world"]),
    ("the cat and the hat", ["cat", "hat"]),
    ("soooo gooood", ["soo", "good"]),
    # collapse happens first, so ccc -> cc and dddd -> dd both drop
    ("a bb ccc dddd", []),
    ("a bb code word", ["code", "word"]),
    ("http leftovers httpx", ["leftovers"]),
    ("Tax-reform now!", ["tax", "reform", "now"]),
    ("foo_bar", ["foo", "bar"]),
    ("", []),
    ("!!!", []),
    ("中国好 else", ["中国好", "else"]),
])
def test_tokenize(backend, text, expected):
    assert backend.tokenize(text, STOP) == expected


def test_count_masks(backend, toy_lexicon):
    tokens = ["good", "good", "bad", "nonword", "love"]
    vec = backend.count_masks(tokens, toy_lexicon.masks)
    # positive: good x2 + love; negative: bad; joy: good x2 + love;
    # trust: love; sadness: bad
    assert vec == [3, 1, 3, 1, 0, 0, 0, 1, 0, 0]


def test_count_masks_empty(backend, toy_lexicon):
    assert backend.count_masks([], toy_lexicon.masks) == [0] * 10


def test_tokenize_rejects_nothing_valid(backend):
    # tokens keep digits and non-Latin letters
    assert backend.tokenize("abc123 987", STOP) == ["abc123", "987"]


@given(st.text(max_size=300))
@settings(max_examples=300, deadline=None)
def test_token_invariants(text):
    for tok in _kernels.tokenize(text, STOP):
        assert len(tok) >= 3
        assert "http" not in tok
        assert tok not in STOP
        assert all(c.isalnum() and c != "_" for c in tok)


@given(st.text(max_size=300))
@settings(max_examples=200, deadline=None)
def test_tokenize_is_idempotent(text):
    tokens = _kernels.tokenize(text, STOP)
    assert _kernels.tokenize(" ".join(tokens), STOP) == tokens


@given(st.lists(st.sampled_from(["good", "bad", "love", "fear", "zzz"]),
                max_size=30))
@settings(max_examples=200, deadline=None)
def test_count_masks_matches_dict_scan(toy_lexicon, tokens):
    got = _kernels.count_masks(tokens, toy_lexicon.masks)
    want = [0] * 10
    for tok in tokens:
        mask = toy_lexicon.masks.get(tok, 0)
        for bit in range(10):
            if mask >> bit & 1:
                want[bit] += 1
    assert got == want


@given(st.lists(st.sampled_from(["good", "bad", "love", "hope", "terror"]),
                max_size=30))
@settings(max_examples=100, deadline=None)
def test_count_masks_is_permutation_invariant(toy_lexicon, tokens):
    fwd = _kernels.count_masks(tokens, toy_lexicon.masks)
    rev = _kernels.count_masks(list(reversed(tokens)), toy_lexicon.masks)
    assert fwd == rev


needs_both = pytest.mark.skipif(len(BACKENDS) < 2,
                                reason="compiled backend not built")

# Text mixing full-range unicode with the fragments that exercise the
# tokenizer's edge paths (URL-ish prefixes, separators, repeats).
_tricky_text = st.lists(
    st.one_of(
        st.text(max_size=6),
        st.sampled_from(["http", "www.", "://", "_", "@", "#", ".",
                         "aaa", "  ", "İ", "ß", "ẞ", "大大大", "é́́"]),
    ),
    max_size=20,
).map("".join)


@needs_both
@given(_tricky_text)
@settings(max_examples=500, deadline=None)
def test_backends_tokenize_identically(text):
    pure = get_backend("pure")
    fast = get_backend("c")
    assert pure.tokenize(text, STOP) == fast.tokenize(text, STOP)


@needs_both
@given(st.text(max_size=60))
@settings(max_examples=300, deadline=None)
def test_backends_collapse_identically(token):
    pure = get_backend("pure")
    fast = get_backend("c")
    assert pure.collapse_repeats(token) == fast.collapse_repeats(token)


@needs_both
@given(st.lists(st.sampled_from(["good", "bad", "love", "hope", "terror",
                                 "fear", "zzz"]), max_size=40))
@settings(max_examples=200, deadline=None)
def test_backends_count_identically(toy_lexicon, tokens):
    pure = get_backend("pure")
    fast = get_backend("c")
    assert (pure.count_masks(tokens, toy_lexicon.masks)
            == fast.count_masks(tokens, toy_lexicon.masks))
