"""Slow, obviously-correct reference pipeline used for verification.

Everything analytical here is written from scratch as plain sequential
Python: a character-walk tokenizer instead of the regex/compiled kernels, a
word -> label-set lexicon table instead of packed bitmasks, and flat dict
tallies instead of the mergeable aggregate classes.  ``--oracle`` runs a
corpus through this module and compares the resulting summary, daily, and
hourly figures against the optimized pipeline before any file is written.

Two pieces are shared with the main pipeline on purpose.  Record admission
(tweetlex.ingest) decides which records enter the analysis at all; both
sides must agree on that boundary, and the behavior under test lives
downstream of it.  Gazetteer *parsing* is shared too, but rule matching is
redone here.
"""

from __future__ import annotations

import functools
from datetime import date, timezone

from .ingest import IST, RecordReader
from .spatial import FOREIGN, INDIA_UNSPECIFIED, INDIAN_REGIONS, UNKNOWN, Gazetteer

SENTIMENT_ORDER = ("positive", "negative")
EMOTION_ORDER = ("joy", "trust", "anticipation", "surprise",
                 "fear", "sadness", "anger", "disgust")
OVERALL_ORDER = SENTIMENT_ORDER + EMOTION_ORDER

_URL_PREFIXES = ("http://", "https://", "www.")


def _url_end(text: str, i: int) -> int | None:
    """End index of a URL starting at position i, else None.

    A URL is a case-insensitive http://, https://, or www. prefix followed
    by at least one non-space character, extending to the next whitespace.
    """
    window = text[i:i + 8].lower()
    for prefix in _URL_PREFIXES:
        if window.startswith(prefix):
            j = i + len(prefix)
            if j < len(text) and not text[j].isspace():
                while j < len(text) and not text[j].isspace():
                    j += 1
                return j
    return None


def _is_handle_char(c: str) -> bool:
    return c == "_" or "a" <= c <= "z" or "A" <= c <= "Z" or "0" <= c <= "9"


def _strip_marker(text: str, marker: str, out_handles: list[str],
                  lower: bool) -> str:
    """Remove marker+handle pairs, recording each handle."""
    out = []
    i = 0
    n = len(text)
    while i < n:
        if text[i] == marker:
            j = i + 1
            while j < n and _is_handle_char(text[j]):
                j += 1
            if j > i + 1:
                handle = text[i + 1:j]
                out_handles.append(handle.lower() if lower else handle)
                out.append(" ")
                i = j
                continue
        out.append(text[i])
        i += 1
    return "".join(out)


def _squeeze(token: str) -> str:
    """Collapse every run of 3+ identical characters down to 2."""
    out = []
    prev = None
    run = 0
    for c in token:
        if c == prev:
            run += 1
        else:
            prev = c
            run = 1
        if run <= 2:
            out.append(c)
    return "".join(out)


def naive_clean(text: str, stopwords: frozenset[str]):
    """Reference tweet cleaner; returns (tokens, mentions, hashtags, urls).

    Same contract as tweetlex.preprocess but built on character walks: strip
    URLs, then @mentions (handles lowercased), then #hashtags (original
    case); lowercase; keep only alphanumeric non-underscore characters;
    split; squeeze character runs; drop short tokens, tokens containing
    "http", and stopwords.
    """
    urls: list[str] = []
    out: list[str] = []
    i = 0
    while i < len(text):
        end = _url_end(text, i)
        if end is not None:
            urls.append(text[i:end])
            out.append(" ")
            i = end
        else:
            out.append(text[i])
            i += 1
    stage = "".join(out)

    mentions: list[str] = []
    stage = _strip_marker(stage, "@", mentions, lower=True)
    hashtags: list[str] = []
    stage = _strip_marker(stage, "#", hashtags, lower=False)

    chars = []
    for c in stage.lower():
        if c.isalnum() and c != "_":
            chars.append(c)
        else:
            chars.append(" ")
    tokens = []
    for tok in "".join(chars).split():
        tok = _squeeze(tok)
        if len(tok) < 3 or "http" in tok or tok in stopwords:
            continue
        tokens.append(tok)
    return tokens, mentions, hashtags, urls


@functools.lru_cache(maxsize=8)
def scan_lexicon_file(path: str) -> dict[str, frozenset[str]]:
    """Brute-force lexicon read: word -> set of flag-1 category labels.

    Assumes a file the strict loader accepts; no bitmasks, no Category
    enum, just the raw strings from the file.
    """
    table: dict[str, set[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            word, label, flag = line.split("\t")
            if flag.strip() == "1":
                table.setdefault(word.strip().lower(), set()).add(label.strip())
    return {w: frozenset(s) for w, s in table.items()}


def naive_count(tokens, table: dict[str, frozenset[str]]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for tok in tokens:
        for lab in table.get(tok, ()):
            counts[lab] = counts.get(lab, 0) + 1
    return counts


def _pick(counts: dict[str, int], order) -> tuple[str, bool]:
    """Max-count label over ``order`` with first-in-order tie-break.

    Returns ("neutral", False) when every count is zero; the bool reports
    whether two or more labels shared the (nonzero) maximum.
    """
    best = None
    best_v = 0
    at_max = 0
    for lab in order:
        v = counts.get(lab, 0)
        if v > best_v:
            best, best_v, at_max = lab, v, 1
        elif v == best_v and v > 0:
            at_max += 1
    if best is None:
        return "neutral", False
    return best, at_max >= 2


def naive_label(counts: dict[str, int]) -> tuple[str, str, str, bool]:
    """(sentiment, emotion, overall, tied) for one tweet's label counts."""
    s, s_tie = _pick(counts, SENTIMENT_ORDER)
    e, e_tie = _pick(counts, EMOTION_ORDER)
    o, o_tie = _pick(counts, OVERALL_ORDER)
    return s, e, o, s_tie or e_tie or o_tie


def naive_resolve(raw: str | None, gz: Gazetteer) -> str:
    """Reference region resolution: first-match over the sorted rules,
    then the "india" fallback, else UNKNOWN."""
    if raw is None:
        return UNKNOWN
    text = " ".join(raw.lower().split())
    if not text:
        return UNKNOWN
    for rule in gz.rules:
        if rule.pattern in text:
            return rule.region
    if "india" in text:
        return INDIA_UNSPECIFIED
    return UNKNOWN


def _top_subtotal(counts: dict[str, int], n: int = 40) -> int:
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return sum(c for _k, c in ranked[:n])


def run_reference(input_path, fmt: str, lexicon_path, *,
                  stopwords: frozenset[str], gazetteer: Gazetteer,
                  default_tz: timezone = IST,
                  date_from: date | None = None,
                  date_to: date | None = None,
                  mention_filter: str | None = None) -> dict:
    """Sequential reference run over one corpus.

    Returns {"summary": .., "daily": .., "hourly": ..} where daily maps
    channel -> ISO date -> label -> count and hourly is a 24-slot list.
    With ``mention_filter`` set, only tweets mentioning that (lowercase)
    handle are analyzed and the summary takes the subcorpus shape.
    """
    table = scan_lexicon_file(str(lexicon_path))
    reader = RecordReader(input_path, fmt, default_tz=default_tz,
                          date_from=date_from, date_to=date_to)

    daily: dict[str, dict] = {"sentiment": {}, "emotion": {}, "overall": {}}
    hourly = [0] * 24
    mention_counts: dict[str, int] = {}
    hashtag_counts: dict[str, int] = {}
    region_tweets: dict[str, int] = {}
    unknown_locs = 0
    blanks = 0
    tagged = 0
    neutral = {"sentiment": 0, "emotion": 0, "overall": 0}
    ties = 0
    non_latin = 0

    for rec in reader:
        tokens, mentions, hashtags, _urls = naive_clean(rec.text, stopwords)
        if mention_filter is not None and mention_filter not in mentions:
            continue
        for m in mentions:
            mention_counts[m] = mention_counts.get(m, 0) + 1
        for h in hashtags:
            key = h.upper()
            hashtag_counts[key] = hashtag_counts.get(key, 0) + 1
        if not tokens:
            blanks += 1
            continue
        tagged += 1
        for tok in tokens:
            if any(ord(c) > 127 for c in tok):
                non_latin += 1
        counts = naive_count(tokens, table)
        s, e, o, tied = naive_label(counts)
        for channel, lab in (("sentiment", s), ("emotion", e), ("overall", o)):
            if lab == "neutral":
                neutral[channel] += 1
        if tied:
            ties += 1
        local = rec.timestamp.astimezone(default_tz)
        day = local.date().isoformat()
        for channel, lab in (("sentiment", s), ("emotion", e), ("overall", o)):
            per_day = daily[channel].setdefault(day, {})
            per_day[lab] = per_day.get(lab, 0) + 1
        hourly[local.hour] += 1
        region = naive_resolve(rec.user_location, gazetteer)
        if region == UNKNOWN:
            unknown_locs += 1
        else:
            region_tweets[region] = region_tweets.get(region, 0) + 1

    stats = reader.stats
    peak = hourly.index(max(hourly)) if tagged else None
    india_total = sum(region_tweets.get(r, 0) for r in INDIAN_REGIONS)
    india_total += region_tweets.get(INDIA_UNSPECIFIED, 0)
    foreign = region_tweets.get(FOREIGN, 0)

    if mention_filter is not None:
        summary = {
            "mention": mention_filter,
            "records_read": stats.lines,
            "records_rejected": stats.skipped_total,
            "rejected_reasons": dict(sorted(stats.skipped.items())),
            "subcorpus_tweets": blanks + tagged,
            "blanks_dropped": blanks,
            "tweets_tagged": tagged,
            "neutral_counts": neutral,
            "tie_count": ties,
            "peak_hour_slot": peak,
            "lexicon_entries": len(table),
        }
    else:
        summary = {
            "records_read": stats.lines,
            "records_rejected": stats.skipped_total,
            "rejected_reasons": dict(sorted(stats.skipped.items())),
            "blanks_dropped": blanks,
            "tweets_tagged": tagged,
            "neutral_counts": neutral,
            "tie_count": ties,
            "non_latin_token_tally": non_latin,
            "peak_hour_slot": peak,
            "mentions": {
                "distinct": len(mention_counts),
                "total_occurrences": sum(mention_counts.values()),
                "top40_subtotal": _top_subtotal(mention_counts),
            },
            "hashtags": {
                "distinct": len(hashtag_counts),
                "total_occurrences": sum(hashtag_counts.values()),
                "top40_subtotal": _top_subtotal(hashtag_counts),
            },
            "locations": {
                "located": sum(region_tweets.values()),
                "unknown": unknown_locs,
                "india_total": india_total,
                "foreign": foreign,
            },
            "lexicon_entries": len(table),
        }
    return {"summary": summary, "daily": daily, "hourly": hourly}
