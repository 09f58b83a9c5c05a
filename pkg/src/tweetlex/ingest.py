"""Read, validate, and stream tweet records from JSONL/CSV files or stdin.

Malformed lines never abort a stream: they are skipped, tallied by reason,
and logged with their line number.  The accounting invariant
``yielded + skipped == lines`` holds for every run.
"""

from __future__ import annotations

import csv
import json
import logging
import sys
from collections import Counter
from dataclasses import dataclass, field
from datetime import date, datetime, timedelta, timezone
from typing import Iterator, Mapping

from .errors import CorpusFormatError, TweetlexError

logger = logging.getLogger(__name__)

#: Default timezone for naive timestamps and local-time bucketing (IST).
IST = timezone(timedelta(hours=5, minutes=30))

CSV_HEADER = ["id", "created_at", "text", "user_location"]

FORMATS = ("jsonl", "csv")

#: Cap on stored per-line diagnostics; counts are always complete.
_MAX_DIAGNOSTICS = 1000


@dataclass(frozen=True)
class TweetRecord:
    """One ingested tweet."""

    id: str
    timestamp: datetime
    text: str
    user_location: str | None = None


@dataclass(frozen=True)
class Rejection:
    """Why a parsed line did not become a record; names the first failing
    field (or "duplicate"/"out_of_range" at the reader level)."""

    reason: str


@dataclass
class ReadStats:
    """Accounting for one read pass: lines == yielded + total skipped."""

    lines: int = 0
    yielded: int = 0
    skipped: Counter = field(default_factory=Counter)
    diagnostics: list[tuple[int, str, str]] = field(default_factory=list)

    @property
    def skipped_total(self) -> int:
        return sum(self.skipped.values())

    def _skip(self, lineno: int, reason: str, detail: str = "") -> None:
        self.skipped[reason] += 1
        if len(self.diagnostics) < _MAX_DIAGNOSTICS:
            self.diagnostics.append((lineno, reason, detail))
        logger.debug("line %d skipped (%s) %s", lineno, reason, detail)


def parse_timestamp(value, default_tz: timezone = IST) -> datetime | None:
    """Parse an RFC-3339 timestamp; naive values get ``default_tz``.

    Returns None when the value does not parse.
    """
    if not isinstance(value, str) or not value:
        return None
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        ts = datetime.fromisoformat(text)
    except ValueError:
        return None
    if ts.tzinfo is None:
        ts = ts.replace(tzinfo=default_tz)
    return ts


def validate_record(raw: Mapping, default_tz: timezone = IST) -> TweetRecord | Rejection:
    """Turn a parsed line into a record, or a Rejection naming the first
    failing field (checked in order: id, timestamp, text)."""
    rec_id = raw.get("id")
    if not isinstance(rec_id, str) or not rec_id:
        return Rejection("id")
    ts = parse_timestamp(raw.get("created_at"), default_tz)
    if ts is None:
        return Rejection("timestamp")
    text = raw.get("text")
    if not isinstance(text, str):
        return Rejection("text")
    loc = raw.get("user_location")
    if not isinstance(loc, str) or not loc.strip():
        loc = None
    return TweetRecord(id=rec_id, timestamp=ts, text=text, user_location=loc)


class RecordReader:
    """Iterable over the valid records of one source, with stats.

    ``default_tz`` localizes naive timestamps and is also the timezone in
    which the optional [date_from, date_to] window is evaluated (both ends
    inclusive).  Duplicate ids (among yielded records) are rejected.
    """

    def __init__(self, source, fmt: str, *, default_tz: timezone = IST,
                 date_from: date | None = None, date_to: date | None = None):
        if fmt not in FORMATS:
            raise TweetlexError(f"unsupported format {fmt!r}; expected one of {FORMATS}")
        self.source = source
        self.format = fmt
        self.default_tz = default_tz
        self.date_from = date_from
        self.date_to = date_to
        self.stats = ReadStats()
        self._seen_ids: set[str] = set()

    def __iter__(self) -> Iterator[TweetRecord]:
        if self.source == "-":
            yield from self._read(sys.stdin)
        else:
            with open(self.source, encoding="utf-8", newline="") as fh:
                yield from self._read(fh)

    def _read(self, fh) -> Iterator[TweetRecord]:
        if self.format == "jsonl":
            yield from self._read_jsonl(fh)
        else:
            yield from self._read_csv(fh)

    def _admit(self, raw: Mapping, lineno: int) -> TweetRecord | None:
        result = validate_record(raw, self.default_tz)
        if isinstance(result, Rejection):
            self.stats._skip(lineno, result.reason)
            return None
        if result.id in self._seen_ids:
            self.stats._skip(lineno, "duplicate", result.id)
            return None
        if self.date_from or self.date_to:
            local = result.timestamp.astimezone(self.default_tz).date()
            if (self.date_from and local < self.date_from) or \
                    (self.date_to and local > self.date_to):
                self.stats._skip(lineno, "out_of_range", local.isoformat())
                return None
        self._seen_ids.add(result.id)
        self.stats.yielded += 1
        return result

    def _read_jsonl(self, fh) -> Iterator[TweetRecord]:
        for lineno, line in enumerate(fh, 1):
            self.stats.lines += 1
            stripped = line.strip()
            if not stripped:
                self.stats._skip(lineno, "blank_line")
                continue
            try:
                raw = json.loads(stripped)
            except json.JSONDecodeError as exc:
                self.stats._skip(lineno, "malformed", str(exc))
                continue
            if not isinstance(raw, dict):
                self.stats._skip(lineno, "malformed", "not a JSON object")
                continue
            record = self._admit(raw, lineno)
            if record is not None:
                yield record

    def _read_csv(self, fh) -> Iterator[TweetRecord]:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            return  # empty file: zero lines, zero records
        except csv.Error as exc:
            raise CorpusFormatError(f"{self.source}: unreadable CSV header: {exc}")
        if header != CSV_HEADER:
            raise CorpusFormatError(
                f"{self.source}: expected CSV header {','.join(CSV_HEADER)!r}, "
                f"got {','.join(header)!r}")
        while True:
            try:
                row = next(reader)
            except StopIteration:
                return
            except csv.Error as exc:
                self.stats.lines += 1
                self.stats._skip(reader.line_num, "malformed", str(exc))
                continue
            self.stats.lines += 1
            lineno = reader.line_num
            if len(row) != len(CSV_HEADER):
                self.stats._skip(lineno, "malformed",
                                 f"expected {len(CSV_HEADER)} fields, got {len(row)}")
                continue
            record = self._admit(dict(zip(CSV_HEADER, row)), lineno)
            if record is not None:
                yield record


def read_records(source, fmt: str, *, default_tz: timezone = IST,
                 date_from: date | None = None,
                 date_to: date | None = None) -> RecordReader:
    """Open a record stream over ``source`` ("-" for stdin)."""
    return RecordReader(source, fmt, default_tz=default_tz,
                        date_from=date_from, date_to=date_to)


def parse_tz_offset(text: str) -> timezone:
    """Parse a ``±HH:MM`` CLI offset into a timezone."""
    raw = text.strip()
    sign = 1
    if raw.startswith(("+", "-")):
        sign = -1 if raw[0] == "-" else 1
        raw = raw[1:]
    parts = raw.split(":")
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise TweetlexError(f"bad timezone offset {text!r}; expected ±HH:MM")
    hours, minutes = int(parts[0]), int(parts[1])
    if hours > 23 or minutes > 59:
        raise TweetlexError(f"bad timezone offset {text!r}; expected ±HH:MM")
    return timezone(sign * timedelta(hours=hours, minutes=minutes))
