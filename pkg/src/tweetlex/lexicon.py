"""Word/category lexicon: the ten categories and the word-level file loader.

The file format is the public word-level association format: one record per
line, three tab-separated fields ``word<TAB>category<TAB>flag`` with flag 0
or 1, ``#`` comment lines ignored.  A word carries a category iff its flag
for that category is 1; words whose flags are all 0 are queryable (empty
result) but never stored.
"""

from __future__ import annotations

import enum
from typing import Iterable

from .errors import LexiconError


class Category(enum.IntEnum):
    """The two sentiments plus eight emotions.

    Declaration order is the canonical tie-break order used for overall
    labeling (sentiments first, then emotions), and each member's value is
    its bit position in the packed masks the kernels consume.
    """

    POSITIVE = 0
    NEGATIVE = 1
    JOY = 2
    TRUST = 3
    ANTICIPATION = 4
    SURPRISE = 5
    FEAR = 6
    SADNESS = 7
    ANGER = 8
    DISGUST = 9

    @property
    def label(self) -> str:
        return self.name.lower()


SENTIMENTS: tuple[Category, ...] = (Category.POSITIVE, Category.NEGATIVE)
EMOTIONS: tuple[Category, ...] = tuple(c for c in Category if c not in SENTIMENTS)

_BY_LABEL = {c.label: c for c in Category}


def category_from_label(token: str) -> Category | None:
    """Map a lowercase category token to its Category, or None if unknown."""
    return _BY_LABEL.get(token)


class Lexicon:
    """Immutable word -> category-set table with case-insensitive lookup.

    Words are stored lowercase; the category set of each stored word is
    packed into an int bitmask indexed by ``Category`` values.
    """

    __slots__ = ("_masks",)

    def __init__(self, masks: dict[str, int]):
        self._masks = masks

    @property
    def entry_count(self) -> int:
        """Number of distinct words carrying at least one category."""
        return len(self._masks)

    @property
    def masks(self) -> dict[str, int]:
        """word -> category bitmask mapping. Treat as read-only."""
        return self._masks

    def mask_of(self, word: str) -> int:
        return self._masks.get(word.lower(), 0)

    def categories_of(self, word: str) -> frozenset[Category]:
        """Categories associated with ``word`` (case-insensitive); empty set
        for unknown words."""
        mask = self._masks.get(word.lower(), 0)
        if not mask:
            return frozenset()
        return frozenset(c for c in Category if mask >> c & 1)

    def words(self) -> Iterable[str]:
        return self._masks.keys()

    def __contains__(self, word: str) -> bool:
        return word.lower() in self._masks

    def __len__(self) -> int:
        return len(self._masks)


def load_lexicon(path) -> Lexicon:
    """Parse a word-level lexicon file into a :class:`Lexicon`.

    Fatal conditions (``LexiconError`` naming the offending line): a row
    without exactly three tab-separated fields, an unknown category token,
    a flag outside {0, 1}, a duplicate (word, category) pair, or a word
    containing whitespace.
    """
    masks: dict[str, int] = {}
    seen: set[tuple[str, int]] = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 3:
                raise LexiconError(
                    f"{path}: line {lineno}: expected 3 tab-separated fields, "
                    f"got {len(parts)}")
            raw_word, cat_token, flag_token = parts
            word = raw_word.strip().lower()
            if not word:
                raise LexiconError(f"{path}: line {lineno}: empty word")
            if any(ch.isspace() for ch in word):
                raise LexiconError(
                    f"{path}: line {lineno}: word contains whitespace: {raw_word!r}")
            category = category_from_label(cat_token.strip())
            if category is None:
                raise LexiconError(
                    f"{path}: line {lineno}: unknown category {cat_token.strip()!r}")
            flag = flag_token.strip()
            if flag not in ("0", "1"):
                raise LexiconError(
                    f"{path}: line {lineno}: flag must be 0 or 1, got {flag_token.strip()!r}")
            key = (word, int(category))
            if key in seen:
                raise LexiconError(
                    f"{path}: line {lineno}: duplicate row for "
                    f"({word!r}, {category.label})")
            seen.add(key)
            if flag == "1":
                masks[word] = masks.get(word, 0) | (1 << category)
    return Lexicon(masks)
