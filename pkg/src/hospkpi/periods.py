"""Reporting periods (month / fiscal year-to-date) and dimension filters."""

from __future__ import annotations

import calendar
import re
from dataclasses import dataclass
from datetime import date, datetime, time, timedelta
from typing import Optional
from zoneinfo import ZoneInfo

from .config import EngineConfig


class PeriodError(ValueError):
    pass


@dataclass(frozen=True)
class Period:
    kind: str  # "month" | "ytd"
    year: int
    month: int  # for ytd: the "through" month

    def __post_init__(self):
        if self.kind not in ("month", "ytd"):
            raise PeriodError(f"unknown period kind {self.kind!r}")
        if not 1 <= self.month <= 12:
            raise PeriodError(f"invalid month {self.month}")

    @property
    def label(self) -> str:
        return f"{self.year:04d}-{self.month:02d}"

    def prev_month(self) -> "Period":
        if self.month == 1:
            return Period(self.kind, self.year - 1, 12)
        return Period(self.kind, self.year, self.month - 1)


_PERIOD_RE = re.compile(r"^(\d{4})-(\d{2})$")


def parse_period(text: str, scope: str = "month") -> Period:
    m = _PERIOD_RE.match(text)
    if not m:
        raise PeriodError(f"malformed period {text!r}, expected YYYY-MM")
    year, month = int(m.group(1)), int(m.group(2))
    if not 1 <= month <= 12:
        raise PeriodError(f"invalid month {month:02d}")
    if scope not in ("month", "ytd"):
        raise PeriodError(f"invalid scope {scope!r}")
    return Period(scope, year, month)


@dataclass(frozen=True)
class PeriodWindow:
    """Resolved period: calendar bounds plus the UTC instants they cover."""

    period: Period
    start_date: date          # first day, inclusive
    end_date: date            # last day, inclusive
    start_utc: datetime       # inclusive
    end_utc: datetime         # exclusive

    @property
    def days(self) -> int:
        return (self.end_date - self.start_date).days + 1

    def weekdays(self) -> int:
        count = 0
        d = self.start_date
        while d <= self.end_date:
            if d.weekday() < 5:
                count += 1
            d += timedelta(days=1)
        return count

    def contains(self, ts: datetime) -> bool:
        return self.start_utc <= ts < self.end_utc

    def contains_date(self, d: date) -> bool:
        return self.start_date <= d <= self.end_date


def _month_start(year: int, month: int) -> date:
    return date(year, month, 1)


def _month_end(year: int, month: int) -> date:
    return date(year, month, calendar.monthrange(year, month)[1])


def resolve_window(period: Period, config: EngineConfig) -> PeriodWindow:
    if period.kind == "month":
        start = _month_start(period.year, period.month)
    else:
        fy = config.fiscal_year_start_month
        if period.month >= fy:
            start = _month_start(period.year, fy)
        else:
            start = _month_start(period.year - 1, fy)
    end = _month_end(period.year, period.month)
    tz = ZoneInfo(config.reporting_tz)
    start_utc = datetime.combine(start, time.min, tzinfo=tz)
    end_utc = datetime.combine(end + timedelta(days=1), time.min, tzinfo=tz)
    return PeriodWindow(period, start, end, start_utc, end_utc)


def months_between(earlier: Period, later: Period) -> int:
    return (later.year - earlier.year) * 12 + (later.month - earlier.month)


DIMENSIONS = ("department", "doctor_id", "location", "drg_code", "organ")

UNASSIGNED = "(unassigned)"


@dataclass(frozen=True)
class DimensionFilter:
    """Equality constraints; the value ``(unassigned)`` matches records
    that do not carry the dimension at all."""

    department: Optional[str] = None
    doctor_id: Optional[str] = None
    location: Optional[str] = None
    drg_code: Optional[str] = None
    organ: Optional[str] = None

    def constraints(self) -> dict[str, str]:
        return {d: v for d in DIMENSIONS if (v := getattr(self, d)) is not None}

    def is_empty(self) -> bool:
        return not self.constraints()

    def matches(self, dims: dict[str, Optional[str]]) -> bool:
        """``dims`` maps dimension name -> value for one record; dimensions a
        record type does not carry must be absent from the mapping."""
        for name, wanted in self.constraints().items():
            have = dims.get(name)
            if wanted == UNASSIGNED:
                if have is not None:
                    return False
            elif have != wanted:
                return False
        return True

    def with_constraint(self, dimension: str, value: str) -> "DimensionFilter":
        if dimension not in DIMENSIONS:
            raise ValueError(f"unknown dimension {dimension!r}")
        kwargs = {d: getattr(self, d) for d in DIMENSIONS}
        kwargs[dimension] = value
        return DimensionFilter(**kwargs)

    def cache_key(self) -> tuple:
        return tuple(getattr(self, d) for d in DIMENSIONS)


EMPTY_FILTER = DimensionFilter()
