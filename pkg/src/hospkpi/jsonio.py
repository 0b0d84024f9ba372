"""Canonical JSON and timestamp serialization shared by the store, CLI, and API.

Every byte that leaves the system (JSONL files, CLI ``--format json`` output,
HTTP bodies) goes through ``dumps`` so that identical payloads serialize to
identical bytes regardless of the code path that produced them.
"""

from __future__ import annotations

import json
from datetime import date, datetime, timezone
from decimal import Decimal
from fractions import Fraction


def parse_ts(text: str) -> datetime:
    """Parse an ISO-8601 timestamp; naive values are taken as UTC."""
    if text.endswith("Z"):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc)


def format_ts(dt: datetime) -> str:
    """Canonical UTC form: ``2015-06-01T08:30:00Z`` (microseconds kept if set)."""
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    dt = dt.astimezone(timezone.utc)
    base = dt.strftime("%Y-%m-%dT%H:%M:%S")
    if dt.microsecond:
        base += f".{dt.microsecond:06d}"
    return base + "Z"


def parse_date(text: str) -> date:
    return date.fromisoformat(text)


class _Encoder(json.JSONEncoder):
    def default(self, o):  # noqa: ANN001 - json hook signature
        if isinstance(o, datetime):
            return format_ts(o)
        if isinstance(o, date):
            return o.isoformat()
        if isinstance(o, Fraction):
            return float(o)
        if isinstance(o, Decimal):
            # stand-in replaced by a raw number token below
            return {"__decimal__": str(o)}
        return super().default(o)


def dumps(obj) -> str:
    """Compact deterministic JSON; Decimals emitted as exact number literals."""
    text = json.dumps(obj, cls=_Encoder, separators=(",", ":"), ensure_ascii=False, allow_nan=False)
    if '{"__decimal__":"' in text:
        out = []
        rest = text
        while True:
            head, sep, tail = rest.partition('{"__decimal__":"')
            out.append(head)
            if not sep:
                break
            literal, _, tail = tail.partition('"}')
            out.append(literal)
            rest = tail
        text = "".join(out)
    return text


def loads(text: str):
    """Parse JSON keeping fractional literals exact (as Decimal)."""
    return json.loads(text, parse_float=Decimal)
