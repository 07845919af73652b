"""Run configuration: one JSON file, overridable by CLI flags.

Defaults follow the evaluation protocol this library reproduces: 4 s
epochs at 1 s stride, tap-4 Daubechies with 5 levels, 16-channel
bipolar montage, 4.5% significance threshold.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path

from .signals import DEFAULT_MONTAGE, Montage
from .wavelets import WAVELETS

__all__ = ["RunConfig"]


@dataclass(frozen=True)
class RunConfig:
    """Knobs for the extract/evaluate/select pipeline.

    ``features`` lists base feature names (hemisphere suffixes are
    added during extraction); None selects the full default catalog.
    """

    width_s: float = 4.0
    stride_s: float = 1.0
    wavelet: str = "d4"
    levels: int = 5
    features: tuple[str, ...] | None = None
    montage: Montage = DEFAULT_MONTAGE
    kde_grid: int = 4096
    cfs_bins: int = 10
    cfs_max_size: int = 10
    threshold: float = 4.5
    threads: int = 1

    def __post_init__(self) -> None:
        if self.features is not None:
            object.__setattr__(self, "features", tuple(self.features))
        if not self.width_s > 0:
            raise ValueError(f"epoch width must be positive, got {self.width_s}")
        if not self.stride_s > 0:
            raise ValueError(f"stride must be positive, got {self.stride_s}")
        if self.wavelet not in WAVELETS:
            raise ValueError(
                f"unknown wavelet {self.wavelet!r}, have {sorted(WAVELETS)}"
            )
        if not 1 <= int(self.levels) == self.levels:
            raise ValueError(f"levels must be a positive integer, got {self.levels}")
        if self.features is not None and not self.features:
            raise ValueError("feature list must name at least one feature")
        if not isinstance(self.montage, Montage):
            raise ValueError("montage must be a Montage")
        if self.kde_grid < 16:
            raise ValueError(f"KDE grid needs >= 16 points, got {self.kde_grid}")
        if self.cfs_bins < 2:
            raise ValueError(f"CFS needs >= 2 bins, got {self.cfs_bins}")
        if self.cfs_max_size < 1:
            raise ValueError(f"CFS max size must be >= 1, got {self.cfs_max_size}")
        if not self.threshold >= 0:
            raise ValueError(f"threshold must be >= 0, got {self.threshold}")
        if not 1 <= int(self.threads) == self.threads:
            raise ValueError(f"threads must be a positive integer, got {self.threads}")

    @classmethod
    def from_json(cls, text: str) -> "RunConfig":
        """Parse a config file body; unknown keys are an error."""
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(f"config is not valid JSON: {exc}") from None
        if not isinstance(raw, dict):
            raise ValueError("config must be a JSON object")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ValueError(
                f"unknown config keys {sorted(unknown)}, have {sorted(known)}"
            )
        if "montage" in raw:
            montage = raw["montage"]
            if not isinstance(montage, dict) or set(montage) != {"left", "right"}:
                raise ValueError(
                    "montage must be an object with 'left' and 'right' lists"
                )
            raw["montage"] = Montage(
                left=tuple(montage["left"]), right=tuple(montage["right"])
            )
        if raw.get("features") is not None:
            raw["features"] = tuple(raw["features"])
        return cls(**raw)

    @classmethod
    def load(cls, path: str | Path) -> "RunConfig":
        try:
            return cls.from_json(Path(path).read_text())
        except ValueError as exc:
            raise ValueError(f"{path}: {exc}") from None

    def to_json(self) -> str:
        raw = dataclasses.asdict(self)
        raw["features"] = list(self.features) if self.features is not None else None
        raw["montage"] = {
            "left": list(self.montage.left),
            "right": list(self.montage.right),
        }
        return json.dumps(raw, indent=2) + "\n"

    def replace(self, **overrides) -> "RunConfig":
        """A copy with the given fields changed (None values ignored)."""
        changed = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changed)
