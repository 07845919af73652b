"""Seizure interval files: two whitespace-separated columns per line.

Each line is ``start_s end_s`` in seconds from record start.  Blank
lines and ``#`` comments are skipped.  Reading normalizes: intervals
come back sorted with overlapping or touching spans merged.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "merge_intervals",
    "parse_chbmit_summary",
    "read_annotations",
    "write_annotations",
]

Interval = tuple[float, float]


def merge_intervals(intervals: Iterable[Interval]) -> tuple[Interval, ...]:
    """Sort intervals and merge any that overlap or touch."""
    cleaned = []
    for start, end in intervals:
        start, end = float(start), float(end)
        if end <= start:
            raise ValueError(f"empty annotation interval [{start}, {end})")
        cleaned.append((start, end))
    cleaned.sort()
    merged: list[list[float]] = []
    for start, end in cleaned:
        if merged and start <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], end)
        else:
            merged.append([start, end])
    return tuple((s, e) for s, e in merged)


def read_annotations(path: str | Path) -> tuple[Interval, ...]:
    """Load a seizure interval file, normalized.

    Raises with the offending line number when a line is not two
    numbers or spans nothing.
    """
    intervals = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        text = line.split("#", 1)[0].strip()
        if not text:
            continue
        fields = text.split()
        if len(fields) != 2:
            raise ValueError(
                f"{path}:{lineno}: expected 'start_s end_s', got {line!r}"
            )
        try:
            start, end = float(fields[0]), float(fields[1])
        except ValueError:
            raise ValueError(
                f"{path}:{lineno}: expected 'start_s end_s', got {line!r}"
            ) from None
        if end <= start:
            raise ValueError(
                f"{path}:{lineno}: interval [{start}, {end}) is empty"
            )
        intervals.append((start, end))
    return merge_intervals(intervals)


def write_annotations(intervals: Sequence[Interval], path: str | Path) -> None:
    """Write intervals, one ``start_s end_s`` line each, normalized.

    Endpoints are rendered with ``repr`` so reading the file back
    reproduces them exactly.
    """
    lines = [f"{s!r} {e!r}\n" for s, e in merge_intervals(intervals)]
    Path(path).write_text("".join(lines), encoding="ascii")


_CHBMIT_FILE = re.compile(r"^File Name:\s*(\S+)", re.MULTILINE)
_CHBMIT_START = re.compile(r"^Seizure(?:\s+\d+)?\s+Start Time:\s*(\d+(?:\.\d+)?)\s*sec")
_CHBMIT_END = re.compile(r"^Seizure(?:\s+\d+)?\s+End Time:\s*(\d+(?:\.\d+)?)\s*sec")


def parse_chbmit_summary(text: str) -> dict[str, tuple[Interval, ...]]:
    """Convert CHB-MIT ``*-summary.txt`` content to per-record intervals.

    Returns ``{file_name: ((start_s, end_s), ...)}`` covering every
    ``File Name:`` block, seizure-free records included (as empty
    tuples).  Start lines must pair with end lines in order.
    """
    result: dict[str, tuple[Interval, ...]] = {}
    current: str | None = None
    pending: list[float] = []
    intervals: list[Interval] = []

    def flush() -> None:
        if current is None:
            return
        if pending:
            raise ValueError(f"record {current!r}: seizure start without an end")
        result[current] = merge_intervals(intervals)

    for line in text.splitlines():
        line = line.strip()
        name = _CHBMIT_FILE.match(line)
        if name:
            flush()
            current = name.group(1)
            pending.clear()
            intervals = []
            continue
        start = _CHBMIT_START.match(line)
        if start:
            if current is None:
                raise ValueError("seizure time before any 'File Name:' line")
            pending.append(float(start.group(1)))
            continue
        end = _CHBMIT_END.match(line)
        if end:
            if current is None or not pending:
                raise ValueError("seizure end time without a matching start")
            intervals.append((pending.pop(0), float(end.group(1))))
    flush()
    return result
