"""Append-only event store with snapshot reads.

Records live in per-type JSONL files under ``<data_dir>/records/`` plus an
in-memory id index. Ingest calls are serialized by a lock; readers take an
immutable :class:`Snapshot` and never observe a half-applied batch.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import jsonio
from .records import (
    Record,
    RecordParseError,
    TAG_TYPES,
    record_from_dict,
    record_primary_key,
    record_tag,
    record_to_dict,
    validate_record,
)

_TAGS = tuple(TAG_TYPES)

_COLLECTION_BY_TAG = {
    "encounter": "encounters",
    "surgery": "surgeries",
    "appointment": "appointments",
    "process_event": "process_events",
    "txn": "txns",
    "claim": "claims",
    "balance": "balances",
    "survey": "surveys",
    "incident": "incidents",
    "transplant": "transplants",
    "capacity": "capacity",
    "staff": "staff",
    "divert": "diverts",
}


@dataclass(frozen=True)
class Snapshot:
    """Immutable view of the store at one batch boundary."""

    version: int
    encounters: tuple = ()
    surgeries: tuple = ()
    appointments: tuple = ()
    process_events: tuple = ()
    txns: tuple = ()
    claims: tuple = ()
    balances: tuple = ()
    surveys: tuple = ()
    incidents: tuple = ()
    transplants: tuple = ()
    capacity: tuple = ()
    staff: tuple = ()
    diverts: tuple = ()
    _caches: dict = field(default_factory=dict, compare=False, repr=False)

    def encounters_by_id(self) -> dict:
        cached = self._caches.get("encounters_by_id")
        if cached is None:
            cached = {e.encounter_id: e for e in self.encounters}
            self._caches["encounters_by_id"] = cached
        return cached

    def record_count(self) -> int:
        return sum(len(getattr(self, name)) for name in _COLLECTION_BY_TAG.values())

    def all_records(self) -> list[Record]:
        out: list[Record] = []
        for name in _COLLECTION_BY_TAG.values():
            out.extend(getattr(self, name))
        return out


@dataclass(frozen=True)
class IngestSummary:
    accepted: int
    rejected_duplicates: int
    rejected_invalid: int
    invalid_details: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "accepted": self.accepted,
            "rejected_duplicates": self.rejected_duplicates,
            "rejected_invalid": self.rejected_invalid,
            "invalid_details": list(self.invalid_details),
        }


class StorageError(RuntimeError):
    pass


class EventStore:
    """Single-writer, multi-reader store. ``data_dir=None`` keeps everything
    in memory (tests, oracles); otherwise batches are appended to disk and
    replayed on open."""

    def __init__(self, data_dir: Optional[Path] = None):
        self._lock = threading.Lock()
        self._data_dir = Path(data_dir) if data_dir is not None else None
        self._records: dict[str, list[Record]] = {tag: [] for tag in _TAGS}
        self._ids: dict[str, set] = {tag: set() for tag in _TAGS}
        self._version = 0
        self._snapshot: Optional[Snapshot] = None
        if self._data_dir is not None:
            self._load()

    @property
    def data_dir(self) -> Optional[Path]:
        return self._data_dir

    def _records_dir(self) -> Path:
        assert self._data_dir is not None
        return self._data_dir / "records"

    def _load(self) -> None:
        rec_dir = self._records_dir()
        if not rec_dir.exists():
            return
        for tag in _TAGS:
            path = rec_dir / f"{tag}.jsonl"
            if not path.exists():
                continue
            lines = path.read_text(encoding="utf-8").splitlines()
            for i, line in enumerate(lines):
                if not line.strip():
                    continue
                try:
                    data = jsonio.loads(line)
                    record = record_from_dict(tag, data)
                except (json.JSONDecodeError, RecordParseError) as exc:
                    if i == len(lines) - 1:
                        # torn final line from an interrupted append
                        continue
                    raise StorageError(f"{path}:{i + 1}: corrupt record: {exc}") from exc
                key = record_primary_key(record)
                if key in self._ids[tag]:
                    raise StorageError(f"{path}:{i + 1}: duplicate id {key!r}")
                self._ids[tag].add(key)
                self._records[tag].append(record)
        self._version += 1

    def ingest(self, batch) -> IngestSummary:
        """Validate, deduplicate, persist, then publish. The batch becomes
        visible to readers only after every line is durable."""
        with self._lock:
            accepted: list[Record] = []
            accepted_keys: dict[str, set] = {tag: set() for tag in _TAGS}
            dup = 0
            invalid_details: list[str] = []
            for record in batch.records:
                tag = record_tag(record)
                violations = validate_record(record)
                if violations:
                    key = record_primary_key(record)
                    msgs = "; ".join(f"{v.field_path}: {v.message}" for v in violations)
                    invalid_details.append(f"{tag} {key!r}: {msgs}")
                    continue
                key = record_primary_key(record)
                if key in self._ids[tag] or key in accepted_keys[tag]:
                    dup += 1
                    continue
                accepted_keys[tag].add(key)
                accepted.append(record)

            if self._data_dir is not None and accepted:
                self._persist(accepted)

            for record in accepted:
                tag = record_tag(record)
                self._records[tag].append(record)
                self._ids[tag].add(record_primary_key(record))
            if accepted:
                self._version += 1
                self._snapshot = None
            return IngestSummary(
                accepted=len(accepted),
                rejected_duplicates=dup,
                rejected_invalid=len(invalid_details),
                invalid_details=tuple(invalid_details),
            )

    def _persist(self, records: list[Record]) -> None:
        rec_dir = self._records_dir()
        rec_dir.mkdir(parents=True, exist_ok=True)
        by_tag: dict[str, list[str]] = {}
        for record in records:
            line = jsonio.dumps(record_to_dict(record))
            by_tag.setdefault(record_tag(record), []).append(line)
        try:
            for tag, lines in by_tag.items():
                path = rec_dir / f"{tag}.jsonl"
                with open(path, "a", encoding="utf-8") as fh:
                    fh.write("\n".join(lines) + "\n")
                    fh.flush()
                    os.fsync(fh.fileno())
        except OSError as exc:
            raise StorageError(f"failed to persist batch: {exc}") from exc

    def snapshot(self) -> Snapshot:
        with self._lock:
            if self._snapshot is None or self._snapshot.version != self._version:
                self._snapshot = Snapshot(
                    version=self._version,
                    **{
                        _COLLECTION_BY_TAG[tag]: tuple(self._records[tag])
                        for tag in _TAGS
                    },
                )
            return self._snapshot


def utc_now() -> datetime:
    return datetime.now(timezone.utc).replace(microsecond=0)
