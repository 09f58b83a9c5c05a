"""Daily and hourly aggregation of tag results.

Both bucket types are mergeable partial aggregates: parallel workers own
private buckets and the merged result is independent of how the corpus was
partitioned.  Timestamps must already be converted to the analysis
timezone before bucketing.
"""

from __future__ import annotations

from collections import Counter
from datetime import date, datetime
from typing import Iterable

from .tagger import TagResult

CHANNELS = ("sentiment", "emotion", "overall")

SLOTS_PER_DAY = 24


class DayBuckets:
    """local date -> label -> count, kept separately for each channel."""

    __slots__ = ("channels",)

    def __init__(self):
        self.channels: dict[str, dict[date, Counter]] = {c: {} for c in CHANNELS}

    def add(self, result: TagResult, when: datetime | date) -> None:
        day = when.date() if isinstance(when, datetime) else when
        for channel, label in (("sentiment", result.sentiment_label),
                               ("emotion", result.emotion_label),
                               ("overall", result.overall_label)):
            table = self.channels[channel]
            if day not in table:
                table[day] = Counter()
            table[day][label] += 1

    def merge(self, other: "DayBuckets") -> "DayBuckets":
        for channel in CHANNELS:
            mine = self.channels[channel]
            for day, labels in other.channels[channel].items():
                if day in mine:
                    mine[day].update(labels)
                else:
                    mine[day] = Counter(labels)
        return self

    def dates(self) -> list[date]:
        seen = set()
        for table in self.channels.values():
            seen.update(table)
        return sorted(seen)

    def day_total(self, day: date, channel: str = "sentiment") -> int:
        return sum(self.channels[channel].get(day, Counter()).values())

    def total_tweets(self) -> int:
        return sum(sum(c.values()) for c in self.channels["sentiment"].values())

    def __eq__(self, other) -> bool:
        return isinstance(other, DayBuckets) and self.channels == other.channels


class HourBuckets:
    """24 local-time slots; slot i covers [i:00:00, i:59:59], summed over
    all days of the corpus."""

    __slots__ = ("slots",)

    def __init__(self):
        self.slots: list[int] = [0] * SLOTS_PER_DAY

    def add(self, when: datetime) -> None:
        self.slots[when.hour] += 1

    def merge(self, other: "HourBuckets") -> "HourBuckets":
        for i in range(SLOTS_PER_DAY):
            self.slots[i] += other.slots[i]
        return self

    @property
    def total(self) -> int:
        return sum(self.slots)

    def __eq__(self, other) -> bool:
        return isinstance(other, HourBuckets) and self.slots == other.slots


def bucket_by_day(results: Iterable[tuple[TagResult, datetime]]) -> DayBuckets:
    """Each tweet contributes exactly 1 to its local date per channel."""
    buckets = DayBuckets()
    for result, when in results:
        buckets.add(result, when)
    return buckets


def bucket_by_hour(results: Iterable[tuple[TagResult, datetime]]) -> HourBuckets:
    """A tweet at local time HH:MM:SS increments slot HH."""
    buckets = HourBuckets()
    for _result, when in results:
        buckets.add(when)
    return buckets


def peak_slot(buckets: HourBuckets) -> int | None:
    """Smallest slot index attaining the maximum count; None when the
    buckets hold no data at all."""
    best = max(buckets.slots)
    if best == 0:
        return None
    return buckets.slots.index(best)
