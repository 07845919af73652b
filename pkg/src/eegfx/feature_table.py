"""Epochs-by-features matrix with class labels, persisted as CSV.

Schema: ``record,epoch_start_s,label,<feature columns...>`` with label
1 for seizure epochs and 0 for normal ones.  Floats are written with 9
significant digits, so identical tables serialize byte-identically.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = ["FeatureTable"]

_FIXED_COLUMNS = ("record", "epoch_start_s", "label")


def _fmt(value: float) -> str:
    return format(float(value), ".9g")


@dataclass(frozen=True)
class FeatureTable:
    """Rows are epochs; columns are named feature values plus metadata."""

    records: tuple[str, ...]
    epoch_starts: np.ndarray
    labels: np.ndarray
    feature_names: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self) -> None:
        records = tuple(str(r) for r in self.records)
        starts = np.asarray(self.epoch_starts, dtype=np.float64)
        labels = np.asarray(self.labels, dtype=np.int64)
        names = tuple(str(n) for n in self.feature_names)
        values = np.asarray(self.values, dtype=np.float64)
        n = len(records)
        if values.ndim != 2 or values.shape != (n, len(names)):
            raise ValueError("values must be (epoch count) x (feature count)")
        if starts.shape != (n,) or labels.shape != (n,):
            raise ValueError("records, epoch_starts and labels must align")
        if n == 0:
            raise ValueError("feature table needs at least one epoch row")
        if not set(np.unique(labels)) <= {0, 1}:
            raise ValueError("labels must be 0 (normal) or 1 (seizure)")
        if len(set(names)) != len(names):
            raise ValueError("duplicate feature column names")
        for banned in names + records:
            if "," in banned or "\n" in banned:
                raise ValueError(f"name {banned!r} cannot contain ',' or newline")
        for arr in (starts, labels, values):
            arr.flags.writeable = False
        object.__setattr__(self, "records", records)
        object.__setattr__(self, "epoch_starts", starts)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.records)

    def column(self, name: str) -> np.ndarray:
        try:
            idx = self.feature_names.index(name)
        except ValueError:
            raise KeyError(f"no feature column {name!r}") from None
        return self.values[:, idx]

    def class_counts(self) -> tuple[int, int]:
        """(seizure epochs, normal epochs)."""
        n_seizure = int((self.labels == 1).sum())
        return n_seizure, len(self.records) - n_seizure

    def class_values(self, name: str) -> tuple[np.ndarray, np.ndarray]:
        """Feature column split as (seizure values, normal values)."""
        col = self.column(name)
        return col[self.labels == 1], col[self.labels == 0]

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(_FIXED_COLUMNS + self.feature_names))
        buf.write("\n")
        for i, record in enumerate(self.records):
            row = [record, _fmt(self.epoch_starts[i]), str(int(self.labels[i]))]
            row.extend(_fmt(v) for v in self.values[i])
            buf.write(",".join(row))
            buf.write("\n")
        return buf.getvalue()

    def write_csv(self, path: str | Path) -> None:
        Path(path).write_text(self.to_csv(), encoding="ascii", newline="")

    @classmethod
    def from_rows(
        cls,
        feature_names: Sequence[str],
        rows: Iterable[tuple[str, float, int, Sequence[float]]],
    ) -> "FeatureTable":
        records, starts, labels, values = [], [], [], []
        for record, start, label, feats in rows:
            records.append(record)
            starts.append(start)
            labels.append(label)
            values.append(np.asarray(feats, dtype=np.float64))
        return cls(
            records=tuple(records),
            epoch_starts=np.array(starts, dtype=np.float64),
            labels=np.array(labels, dtype=np.int64),
            feature_names=tuple(feature_names),
            values=np.vstack(values) if values else np.empty((0, len(feature_names))),
        )

    @classmethod
    def read_csv(cls, path: str | Path) -> "FeatureTable":
        lines = Path(path).read_text(encoding="ascii").splitlines()
        if not lines:
            raise ValueError(f"{path}: empty feature table file")
        header = lines[0].split(",")
        if tuple(header[: len(_FIXED_COLUMNS)]) != _FIXED_COLUMNS:
            raise ValueError(f"{path}: header must start with {','.join(_FIXED_COLUMNS)}")
        names = tuple(header[len(_FIXED_COLUMNS) :])
        rows = []
        for ln, line in enumerate(lines[1:], start=2):
            cells = line.split(",")
            if len(cells) != len(header):
                raise ValueError(f"{path}:{ln}: expected {len(header)} cells, got {len(cells)}")
            rows.append(
                (cells[0], float(cells[1]), int(cells[2]), [float(c) for c in cells[3:]])
            )
        return cls.from_rows(names, rows)
