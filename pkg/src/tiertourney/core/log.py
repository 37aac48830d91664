"""Reading and writing the append-only tournament log."""

from __future__ import annotations

import os
from pathlib import Path

from .errors import CorruptLine
from .events import Event, LogRecord, record_from_line, record_to_line


def write_log(path: str | Path, records: list[LogRecord] | tuple[LogRecord, ...]) -> None:
    """Replace the file at path with the given records, one per line."""
    text = "".join(record_to_line(r) + "\n" for r in records)
    Path(path).write_text(text, encoding="utf-8")


def append_record(path: str | Path, record: LogRecord) -> None:
    """Append one record and flush it to disk before returning."""
    append_records(path, (record,))


def append_records(path: str | Path, records: list[LogRecord] | tuple[LogRecord, ...]) -> None:
    """Append records with a single flush+fsync at the end."""
    with open(path, "a", encoding="utf-8") as fh:
        for record in records:
            fh.write(record_to_line(record) + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def read_log(path: str | Path) -> list[LogRecord]:
    """Parse every line; raises CorruptLine / VersionMismatch with a 1-based line number."""
    records: list[LogRecord] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped:
                continue
            record = record_from_line(stripped, lineno=lineno)
            if record.seq != len(records):
                raise CorruptLine(
                    f"line {lineno}: sequence gap (seq {record.seq}, expected {len(records)})",
                    line=lineno,
                )
            records.append(record)
    return records


def read_events(path: str | Path) -> list[Event]:
    return [r.event for r in read_log(path)]
