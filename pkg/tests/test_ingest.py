"""Ingestion tests: validation order, skip accounting, windows, formats."""

import datetime as dt
import io
import json

import pytest

from tweetlex.errors import CorpusFormatError, TweetlexError
from tweetlex.ingest import (
    CSV_HEADER,
    IST,
    Rejection,
    TweetRecord,
    parse_timestamp,
    parse_tz_offset,
    read_records,
    validate_record,
)

UTC = dt.timezone.utc


def _jsonl(tmp_path, lines):
    p = tmp_path / "corpus.jsonl"
    p.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return p


def _row(i="t1", ts="2017-07-01T10:00:00+05:30", text="hello", **extra):
    raw = {"id": i, "created_at": ts, "text": text}
    raw.update(extra)
    return json.dumps(raw)


class TestParseTimestamp:
    def test_explicit_offset(self):
        ts = parse_timestamp("2017-07-01T10:00:00+05:30")
        assert ts == dt.datetime(2017, 7, 1, 10, 0, tzinfo=IST)

    @pytest.mark.parametrize("suffix", ["Z", "z"])
    def test_zulu(self, suffix):
        ts = parse_timestamp("2017-07-01T10:00:00" + suffix)
        assert ts == dt.datetime(2017, 7, 1, 10, 0, tzinfo=UTC)

    def test_naive_gets_default_tz(self):
        ts = parse_timestamp("2017-07-01T10:00:00", default_tz=UTC)
        assert ts.tzinfo == UTC

    @pytest.mark.parametrize("bad", [
        "not-a-date", "2017-13-01T00:00:00", "", None, 42, "2017-07-01TZZ",
    ])
    def test_unparseable(self, bad):
        assert parse_timestamp(bad) is None


class TestParseTzOffset:
    @pytest.mark.parametrize("text,hours,minutes", [
        ("+05:30", 5, 30),
        ("-08:00", -8, 0),
        ("05:30", 5, 30),
        ("+00:00", 0, 0),
    ])
    def test_valid(self, text, hours, minutes):
        sign = -1 if hours < 0 else 1
        expect = dt.timezone(sign * dt.timedelta(hours=abs(hours), minutes=minutes))
        assert parse_tz_offset(text) == expect

    @pytest.mark.parametrize("bad", ["abc", "+5", "+25:00", "+05:99", "--05:30", "+05:3x", ""])
    def test_invalid(self, bad):
        with pytest.raises(TweetlexError):
            parse_tz_offset(bad)


class TestValidateRecord:
    def test_happy_path(self):
        rec = validate_record({"id": "a", "created_at": "2017-07-01T00:00:00Z",
                               "text": "hi", "user_location": "Delhi"})
        assert isinstance(rec, TweetRecord)
        assert rec.user_location == "Delhi"

    @pytest.mark.parametrize("raw,reason", [
        ({}, "id"),
        ({"id": 123, "created_at": "2017-07-01T00:00:00Z", "text": "x"}, "id"),
        ({"id": "", "created_at": "2017-07-01T00:00:00Z", "text": "x"}, "id"),
        ({"id": "a", "text": "x"}, "timestamp"),
        ({"id": "a", "created_at": "nope", "text": "x"}, "timestamp"),
        ({"id": "a", "created_at": "2017-07-01T00:00:00Z"}, "text"),
        ({"id": "a", "created_at": "2017-07-01T00:00:00Z", "text": 7}, "text"),
    ])
    def test_first_failing_field_named(self, raw, reason):
        result = validate_record(raw)
        assert result == Rejection(reason)

    def test_empty_text_is_a_valid_string(self):
        rec = validate_record({"id": "a", "created_at": "2017-07-01T00:00:00Z",
                               "text": ""})
        assert isinstance(rec, TweetRecord)
        assert rec.text == ""

    @pytest.mark.parametrize("loc", [None, "", "   ", 42, ["x"]])
    def test_unusable_location_becomes_none(self, loc):
        rec = validate_record({"id": "a", "created_at": "2017-07-01T00:00:00Z",
                               "text": "x", "user_location": loc})
        assert rec.user_location is None

    def test_location_absent(self):
        rec = validate_record({"id": "a", "created_at": "2017-07-01T00:00:00Z",
                               "text": "x"})
        assert rec.user_location is None


class TestJsonlReader:
    def test_skip_reasons_tallied(self, tmp_path):
        p = _jsonl(tmp_path, [
            _row("a"),
            "",
            "   ",
            "{not json",
            "[1, 2]",
            '"just a string"',
            _row(""),
            _row("b", ts="bad-ts"),
            json.dumps({"id": "c", "created_at": "2017-07-01T00:00:00Z"}),
            _row("d"),
        ])
        reader = read_records(p, "jsonl")
        ids = [r.id for r in reader]
        assert ids == ["a", "d"]
        assert reader.stats.lines == 10
        assert reader.stats.yielded == 2
        assert reader.stats.skipped == {
            "blank_line": 2, "malformed": 3, "id": 1, "timestamp": 1, "text": 1,
        }
        assert reader.stats.lines == reader.stats.yielded + reader.stats.skipped_total

    def test_duplicate_counts_only_yielded_ids(self, tmp_path):
        # The first "a" is rejected for its timestamp, so the second "a" is
        # the first admitted record with that id and must be kept.
        p = _jsonl(tmp_path, [
            _row("a", ts="garbage"),
            _row("a"),
            _row("a"),
            _row("b"),
            _row("b"),
        ])
        reader = read_records(p, "jsonl")
        ids = [r.id for r in reader]
        assert ids == ["a", "b"]
        assert reader.stats.skipped["duplicate"] == 2
        assert reader.stats.skipped["timestamp"] == 1

    def test_diagnostics_carry_line_numbers(self, tmp_path):
        p = _jsonl(tmp_path, [_row("a"), "{oops"])
        reader = read_records(p, "jsonl")
        list(reader)
        assert len(reader.stats.diagnostics) == 1
        lineno, reason, _detail = reader.stats.diagnostics[0]
        assert (lineno, reason) == (2, "malformed")

    def test_window_inclusive_and_tz_aware(self, tmp_path):
        # 2017-07-01T20:00:00Z is 01:30 on July 2 in IST: the window is
        # evaluated in the reader's default tz, not in UTC.
        p = _jsonl(tmp_path, [
            _row("utc_evening", ts="2017-07-01T20:00:00Z"),
            _row("july1", ts="2017-07-01T12:00:00+05:30"),
            _row("july2", ts="2017-07-02T23:59:59+05:30"),
            _row("july3", ts="2017-07-03T00:00:00+05:30"),
        ])
        reader = read_records(p, "jsonl",
                              date_from=dt.date(2017, 7, 2),
                              date_to=dt.date(2017, 7, 2))
        ids = [r.id for r in reader]
        assert ids == ["utc_evening", "july2"]
        assert reader.stats.skipped["out_of_range"] == 2

    def test_open_ended_windows(self, tmp_path):
        lines = [_row(f"d{d}", ts=f"2017-07-0{d}T12:00:00+05:30") for d in (1, 2, 3)]
        p = _jsonl(tmp_path, lines)
        only_from = read_records(p, "jsonl", date_from=dt.date(2017, 7, 2))
        assert [r.id for r in only_from] == ["d2", "d3"]
        only_to = read_records(p, "jsonl", date_to=dt.date(2017, 7, 2))
        assert [r.id for r in only_to] == ["d1", "d2"]

    def test_stdin_source(self, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO(_row("s1") + "\n"))
        reader = read_records("-", "jsonl")
        assert [r.id for r in reader] == ["s1"]

    def test_unsupported_format_rejected(self, tmp_path):
        with pytest.raises(TweetlexError):
            read_records(tmp_path / "x", "parquet")


class TestCsvReader:
    HEADER = ",".join(CSV_HEADER)

    def _csv(self, tmp_path, rows, header=None):
        p = tmp_path / "corpus.csv"
        body = "\n".join([header if header is not None else self.HEADER, *rows])
        p.write_text(body + "\n", encoding="utf-8")
        return p

    def test_reads_rows(self, tmp_path):
        p = self._csv(tmp_path, [
            'a,2017-07-01T10:00:00+05:30,hello world,Delhi',
            'b,2017-07-01T11:00:00+05:30,more text,',
        ])
        reader = read_records(p, "csv")
        recs = list(reader)
        assert [r.id for r in recs] == ["a", "b"]
        assert recs[0].user_location == "Delhi"
        assert recs[1].user_location is None

    def test_header_mismatch_raises(self, tmp_path):
        p = self._csv(tmp_path, ['a,b,c,d'], header="id,timestamp,text,loc")
        with pytest.raises(CorpusFormatError):
            list(read_records(p, "csv"))

    def test_empty_file_yields_nothing(self, tmp_path):
        p = tmp_path / "empty.csv"
        p.write_text("", encoding="utf-8")
        reader = read_records(p, "csv")
        assert list(reader) == []
        assert reader.stats.lines == 0

    def test_wrong_field_count_skipped(self, tmp_path):
        p = self._csv(tmp_path, [
            'a,2017-07-01T10:00:00+05:30,hello,Delhi',
            'only,three,fields',
            'b,2017-07-01T11:00:00+05:30,ok,',
        ])
        reader = read_records(p, "csv")
        assert [r.id for r in reader] == ["a", "b"]
        assert reader.stats.skipped["malformed"] == 1

    def test_quoted_multiline_field_is_one_row(self, tmp_path):
        p = self._csv(tmp_path, [
            'a,2017-07-01T10:00:00+05:30,"line one\nline two",Delhi',
            'b,2017-07-01T11:00:00+05:30,plain,',
        ])
        reader = read_records(p, "csv")
        recs = list(reader)
        assert recs[0].text == "line one\nline two"
        assert reader.stats.lines == 2
        assert reader.stats.lines == reader.stats.yielded + reader.stats.skipped_total
