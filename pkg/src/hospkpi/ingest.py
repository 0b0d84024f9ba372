"""Parsing record batches from JSONL and CSV streams."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime
from typing import Optional, Union

from . import jsonio
from .records import Record, RecordParseError, TAG_TYPES, record_from_dict
from .store import utc_now


@dataclass(frozen=True)
class ParseError:
    line: int
    reason: str


@dataclass(frozen=True)
class RecordBatch:
    records: tuple[Record, ...]
    source_name: str
    ingested_at: datetime = field(default_factory=utc_now)


def _as_text(stream: Union[bytes, str, io.IOBase]) -> str:
    if isinstance(stream, bytes):
        return stream.decode("utf-8")
    if isinstance(stream, str):
        return stream
    data = stream.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def parse_records(
    stream,
    format: str = "jsonl",
    record_type: Optional[str] = None,
    source_name: str = "<stream>",
) -> tuple[RecordBatch, list[ParseError]]:
    """Every well-formed line becomes a typed record; every bad line becomes
    one error with its line number. Order is preserved."""
    text = _as_text(stream)
    if format == "jsonl":
        return _parse_jsonl(text, source_name)
    if format == "csv":
        if record_type is None:
            raise ValueError("csv parsing requires a record_type hint")
        if record_type not in TAG_TYPES:
            raise ValueError(f"unknown record type {record_type!r}")
        return _parse_csv(text, record_type, source_name)
    raise ValueError(f"unknown format {format!r}")


def _parse_jsonl(text: str, source_name: str) -> tuple[RecordBatch, list[ParseError]]:
    records: list[Record] = []
    errors: list[ParseError] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            data = jsonio.loads(line)
        except json.JSONDecodeError as exc:
            errors.append(ParseError(lineno, f"invalid json: {exc.msg}"))
            continue
        if not isinstance(data, dict):
            errors.append(ParseError(lineno, "expected a json object"))
            continue
        tag = data.get("type")
        if not isinstance(tag, str):
            errors.append(ParseError(lineno, "missing type tag"))
            continue
        try:
            records.append(record_from_dict(tag, data))
        except RecordParseError as exc:
            errors.append(ParseError(lineno, str(exc)))
    return RecordBatch(tuple(records), source_name), errors


def _parse_csv(text: str, record_type: str, source_name: str) -> tuple[RecordBatch, list[ParseError]]:
    records: list[Record] = []
    errors: list[ParseError] = []
    reader = csv.DictReader(io.StringIO(text))
    for row in reader:
        lineno = reader.line_num
        if None in row:
            errors.append(ParseError(lineno, "row has more columns than the header"))
            continue
        try:
            records.append(record_from_dict(record_type, row))
        except RecordParseError as exc:
            errors.append(ParseError(lineno, str(exc)))
    return RecordBatch(tuple(records), source_name), errors


def serialize_batch(batch: RecordBatch) -> str:
    """JSONL form of a batch; inverse of jsonl parsing."""
    from .records import record_to_dict

    return "".join(jsonio.dumps(record_to_dict(r)) + "\n" for r in batch.records)
