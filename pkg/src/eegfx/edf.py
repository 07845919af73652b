"""EDF (European Data Format) reader and writer.

Layout: a 256-byte fixed header, then 256 bytes of per-signal header
fields, then data records of little-endian 16-bit two's-complement
samples.  Digital values map to physical units via

    physical = (digital - dig_min) * (phys_max - phys_min)
                                   / (dig_max - dig_min) + phys_min

The writer quantizes against the physical range *as re-parsed from the
8-character ASCII header fields it writes*, so a read/write/read cycle
reproduces sample values bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .signals import Record

__all__ = ["EdfHeader", "EdfSignal", "read_edf", "read_edf_header", "write_edf"]

_DIGITAL_MIN = -32768
_DIGITAL_MAX = 32767


@dataclass(frozen=True)
class EdfSignal:
    """Per-signal header block: labeling, calibration, and record shape."""

    label: str
    transducer: str = ""
    physical_dim: str = "uV"
    physical_min: float = float(_DIGITAL_MIN)
    physical_max: float = float(_DIGITAL_MAX)
    digital_min: int = _DIGITAL_MIN
    digital_max: int = _DIGITAL_MAX
    prefiltering: str = ""
    samples_per_record: int = 1

    def __post_init__(self) -> None:
        if self.digital_min == self.digital_max:
            raise ValueError(
                f"signal {self.label!r} has zero digital range "
                f"({self.digital_min} .. {self.digital_max})"
            )
        if not self.physical_min < self.physical_max:
            raise ValueError(
                f"signal {self.label!r} physical range is empty "
                f"({self.physical_min} .. {self.physical_max})"
            )
        if self.samples_per_record <= 0:
            raise ValueError(
                f"signal {self.label!r} declares {self.samples_per_record} "
                "samples per record"
            )

    @property
    def gain(self) -> float:
        """Physical units per digital step."""
        return (self.physical_max - self.physical_min) / (
            self.digital_max - self.digital_min
        )


@dataclass(frozen=True)
class EdfHeader:
    version: str
    patient: str
    recording: str
    start_date: str
    start_time: str
    n_records: int
    record_duration_s: float
    signals: tuple[EdfSignal, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "signals", tuple(self.signals))
        if not self.signals:
            raise ValueError("EDF header declares 0 signals")
        if self.n_records < 1:
            raise ValueError(f"EDF header declares {self.n_records} data records")
        if not self.record_duration_s > 0:
            raise ValueError(
                f"record duration must be positive, got {self.record_duration_s}"
            )

    @property
    def n_signals(self) -> int:
        return len(self.signals)

    @property
    def header_bytes(self) -> int:
        return 256 * (1 + self.n_signals)

    @property
    def samples_per_record(self) -> int:
        return sum(s.samples_per_record for s in self.signals)


def _ascii(raw: bytes, what: str) -> str:
    try:
        return raw.decode("ascii").strip()
    except UnicodeDecodeError:
        raise ValueError(f"non-ASCII bytes in EDF {what} field") from None


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ValueError(f"EDF {what} field is not an integer: {text!r}") from None


def _float(text: str, what: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"EDF {what} field is not a number: {text!r}") from None


def _read_exact(handle, count: int, what: str) -> bytes:
    raw = handle.read(count)
    if len(raw) != count:
        raise ValueError(
            f"truncated EDF file: expected {count} bytes of {what}, "
            f"got {len(raw)}"
        )
    return raw


def _parse_header(raw: bytes, signal_raw: bytes, n_signals: int) -> EdfHeader:
    # Per-signal fields are stored as ns consecutive copies of each field,
    # not ns consecutive signal blocks.
    widths = ((16, "label"), (80, "transducer"), (8, "physical dimension"),
              (8, "physical minimum"), (8, "physical maximum"),
              (8, "digital minimum"), (8, "digital maximum"),
              (80, "prefiltering"), (8, "samples per record"), (32, "reserved"))
    columns = []
    offset = 0
    for width, what in widths:
        block = signal_raw[offset : offset + width * n_signals]
        columns.append(
            [_ascii(block[i * width : (i + 1) * width], what) for i in range(n_signals)]
        )
        offset += width * n_signals
    labels, transducers, dims, pmins, pmaxs, dmins, dmaxs, prefilters, sprs, _ = columns

    signals = []
    for i in range(n_signals):
        dig_min = _int(dmins[i], "digital minimum")
        dig_max = _int(dmaxs[i], "digital maximum")
        if dig_min == dig_max:
            raise ValueError(
                f"signal {labels[i]!r} has zero digital range ({dig_min} .. {dig_max})"
            )
        signals.append(
            EdfSignal(
                label=labels[i],
                transducer=transducers[i],
                physical_dim=dims[i],
                physical_min=_float(pmins[i], "physical minimum"),
                physical_max=_float(pmaxs[i], "physical maximum"),
                digital_min=dig_min,
                digital_max=dig_max,
                prefiltering=prefilters[i],
                samples_per_record=_int(sprs[i], "samples per record"),
            )
        )
    return EdfHeader(
        version=_ascii(raw[0:8], "version"),
        patient=_ascii(raw[8:88], "patient"),
        recording=_ascii(raw[88:168], "recording"),
        start_date=_ascii(raw[168:176], "start date"),
        start_time=_ascii(raw[176:184], "start time"),
        n_records=_int(_ascii(raw[236:244], "record count"), "record count"),
        record_duration_s=_float(
            _ascii(raw[244:252], "record duration"), "record duration"
        ),
        signals=tuple(signals),
    )


def read_edf_header(path: str | Path) -> EdfHeader:
    """Parse and validate the header of an EDF file."""
    with open(path, "rb") as handle:
        raw = _read_exact(handle, 256, "header")
        n_signals = _int(_ascii(raw[252:256], "signal count"), "signal count")
        if n_signals < 1:
            raise ValueError(f"EDF header declares {n_signals} signals")
        signal_raw = _read_exact(handle, 256 * n_signals, "signal headers")
    header = _parse_header(raw, signal_raw, n_signals)
    declared = _int(_ascii(raw[184:192], "header size"), "header size")
    if declared != header.header_bytes:
        raise ValueError(
            f"EDF header size field says {declared} bytes, "
            f"but {header.n_signals} signals need {header.header_bytes}"
        )
    return header


def read_edf(path: str | Path) -> Record:
    """Load an EDF file as a :class:`Record` in physical units.

    All signals must share one sampling rate; annotations are not part
    of EDF proper and come back empty.
    """
    path = Path(path)
    header = read_edf_header(path)
    rates = {s.samples_per_record / header.record_duration_s for s in header.signals}
    if len(rates) != 1:
        raise ValueError(f"mixed sampling rates unsupported: {sorted(rates)} Hz")
    fs = rates.pop()

    record_len = header.samples_per_record
    expected = 2 * record_len * header.n_records
    payload = path.read_bytes()[header.header_bytes :]
    if len(payload) < expected:
        raise ValueError(
            f"truncated EDF file: {header.n_records} records of "
            f"{record_len} samples need {expected} bytes, got {len(payload)}"
        )
    if len(payload) > expected:
        raise ValueError(
            f"inconsistent record sizes: {len(payload) - expected} bytes "
            f"beyond {header.n_records} declared records"
        )

    digital = np.frombuffer(payload, dtype="<i2").reshape(
        header.n_records, record_len
    )
    rows = []
    offset = 0
    for sig in header.signals:
        block = digital[:, offset : offset + sig.samples_per_record]
        rows.append(
            (block.reshape(-1).astype(np.float64) - sig.digital_min) * sig.gain
            + sig.physical_min
        )
        offset += sig.samples_per_record
    return Record(
        channels=tuple(s.label for s in header.signals),
        data=np.vstack(rows),
        fs=fs,
        annotations=(),
        name=path.stem,
    )


def _format_field(value, width: int, what: str) -> bytes:
    text = str(value)
    if len(text) > width:
        raise ValueError(f"EDF {what} field {text!r} exceeds {width} characters")
    if not text.isascii():
        raise ValueError(f"EDF {what} field {text!r} is not ASCII")
    return text.ljust(width).encode("ascii")


def _format_range(value: float, what: str) -> str:
    """Render a physical bound in <= 8 characters without losing precision."""
    if float(value) == int(value) and abs(value) < 1e8:
        text = str(int(value))
        if len(text) <= 8:
            return text
    for candidate in (repr(float(value)), format(value, ".6g"), format(value, ".5g")):
        if len(candidate) <= 8 and float(candidate) == float(value):
            return candidate
    raise ValueError(f"{what} {value!r} does not fit an 8-character EDF field")


def _record_shape(n_samples: int, fs: float) -> tuple[int, int, float]:
    """Choose (n_records, samples_per_record, record_duration_s)."""
    if float(fs).is_integer() and n_samples % int(fs) == 0:
        return n_samples // int(fs), int(fs), 1.0
    return 1, n_samples, n_samples / fs


def write_edf(
    record: Record,
    path: str | Path,
    physical_range: tuple[float, float]
    | Sequence[tuple[float, float]]
    | Mapping[str, tuple[float, float]]
    | None = None,
    patient: str = "",
    recording: str = "",
    start_date: str = "01.01.00",
    start_time: str = "00.00.00",
) -> EdfHeader:
    """Write a record as 16-bit EDF and return the header as written.

    ``physical_range`` sets the calibration span per channel: one
    ``(min, max)`` pair for all channels, a sequence of pairs in channel
    order, a mapping from channel label, or None for per-channel integer
    bounds that enclose the data.  Samples outside the span are an
    error, not a silent clip.  Quantization uses the range values parsed
    back from their ASCII header rendering, which is what makes repeated
    read/write cycles on the same span bit-stable.

    Lengths divisible by an integer sampling rate are stored as
    one-second records; anything else becomes a single record whose
    duration must fit the 8-character duration field exactly.
    """
    path = Path(path)
    n_records, spr, duration = _record_shape(record.n_samples, record.fs)

    ranges = []
    for row, channel in enumerate(record.channels):
        if physical_range is None:
            lo = float(np.floor(record.data[row].min()))
            hi = float(np.ceil(record.data[row].max()))
            if lo == hi:
                lo, hi = lo - 1.0, hi + 1.0
        elif isinstance(physical_range, Mapping):
            lo, hi = physical_range[channel]
        elif physical_range and np.isscalar(physical_range[0]):
            lo, hi = physical_range  # one pair for every channel
        else:
            lo, hi = physical_range[row]
        text_lo = _format_range(float(lo), "physical minimum")
        text_hi = _format_range(float(hi), "physical maximum")
        ranges.append((float(text_lo), float(text_hi)))

    signals = tuple(
        EdfSignal(
            label=channel,
            physical_min=lo,
            physical_max=hi,
            samples_per_record=spr,
        )
        for channel, (lo, hi) in zip(record.channels, ranges)
    )
    header = EdfHeader(
        version="0",
        patient=patient,
        recording=recording,
        start_date=start_date,
        start_time=start_time,
        n_records=n_records,
        record_duration_s=duration,
        signals=signals,
    )

    digital = np.empty((n_records, header.samples_per_record), dtype="<i2")
    offset = 0
    for row, sig in enumerate(header.signals):
        samples = record.data[row]
        if samples.min() < sig.physical_min or samples.max() > sig.physical_max:
            raise ValueError(
                f"channel {sig.label!r} samples span "
                f"[{samples.min()}, {samples.max()}], outside the physical "
                f"range ({sig.physical_min} .. {sig.physical_max})"
            )
        codes = np.rint((samples - sig.physical_min) / sig.gain) + sig.digital_min
        codes = np.clip(codes, sig.digital_min, sig.digital_max)
        digital[:, offset : offset + spr] = codes.reshape(n_records, spr)
        offset += spr

    parts = [
        _format_field(header.version, 8, "version"),
        _format_field(header.patient, 80, "patient"),
        _format_field(header.recording, 80, "recording"),
        _format_field(header.start_date, 8, "start date"),
        _format_field(header.start_time, 8, "start time"),
        _format_field(header.header_bytes, 8, "header size"),
        _format_field("", 44, "reserved"),
        _format_field(header.n_records, 8, "record count"),
        _format_field(_format_range(duration, "record duration"), 8, "record duration"),
        _format_field(header.n_signals, 4, "signal count"),
    ]
    per_signal = (
        ("label", 16, lambda s: s.label),
        ("transducer", 80, lambda s: s.transducer),
        ("physical dimension", 8, lambda s: s.physical_dim),
        ("physical minimum", 8, lambda s: _format_range(s.physical_min, "physical minimum")),
        ("physical maximum", 8, lambda s: _format_range(s.physical_max, "physical maximum")),
        ("digital minimum", 8, lambda s: s.digital_min),
        ("digital maximum", 8, lambda s: s.digital_max),
        ("prefiltering", 80, lambda s: s.prefiltering),
        ("samples per record", 8, lambda s: s.samples_per_record),
        ("reserved", 32, lambda s: ""),
    )
    for what, width, getter in per_signal:
        for sig in header.signals:
            parts.append(_format_field(getter(sig), width, what))

    path.write_bytes(b"".join(parts) + digital.tobytes())
    return header
