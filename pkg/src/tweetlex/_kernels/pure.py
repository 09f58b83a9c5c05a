"""Pure-Python kernels: the per-tweet hot path.

Same contract as the compiled backend in ``_core.pyx``; the test suite
asserts exact output equality between the two on arbitrary text.
"""

from __future__ import annotations

import re

# Anything that is neither a word character nor whitespace is punctuation;
# underscore is punctuation too (tokens must be purely alphanumeric).
_PUNCT_RE = re.compile(r"[^\w\s]|_")
_REPEAT_RE = re.compile(r"(.)\1{2,}")

BACKEND = "pure"


def collapse_repeats(token: str) -> str:
    """Shorten every run of 3+ identical characters to exactly 2."""
    return _REPEAT_RE.sub(r"\1\1", token)


def tokenize(text: str, stopwords) -> list[str]:
    """Lowercase, strip punctuation, split, collapse repeats, then drop
    tokens that are shorter than 3 characters, contain "http" (URL debris),
    or are stopwords."""
    out = []
    repeat_sub = _REPEAT_RE.sub
    for raw in _PUNCT_RE.sub(" ", text.lower()).split():
        tok = repeat_sub(r"\1\1", raw)
        if len(tok) < 3 or "http" in tok or tok in stopwords:
            continue
        out.append(tok)
    return out


def count_masks(tokens: list[str], masks: dict[str, int]) -> list[int]:
    """Per-category association counts over ``tokens``.

    Returns a 10-slot list indexed by ``Category`` value; each token
    occurrence contributes 1 to every category set in its mask.
    """
    counts = [0] * 10
    get = masks.get
    for tok in tokens:
        m = get(tok, 0)
        while m:
            low = m & -m
            counts[low.bit_length() - 1] += 1
            m ^= low
    return counts
