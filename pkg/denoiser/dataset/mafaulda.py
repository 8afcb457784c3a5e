"""
MAFAULDA recording ingestion.

Each recording is a headerless CSV with eight numeric channels sampled at
50 kHz for 5 s (250 000 rows). The microphone is conventionally the last
column.
"""

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd
from loguru import logger
from numpy.typing import NDArray

from denoiser.audio import Waveform, write_wav
from denoiser.errors import (
    ColumnOutOfRangeError,
    EmptyFileError,
    IoFailureError,
    MalformedRowError,
)
from denoiser.models import Category

NUM_CHANNELS = 8
SAMPLE_RATE_HZ = 50_000
FULL_LENGTH = 250_000
DEFAULT_MIC_COLUMN = 7

_MISALIGNMENT_DIRS = ("horizontal-misalignment", "horizontal_misalignment")
_MM_PATTERN = re.compile(r"^(\d+(?:\.\d+)?)\s*mm$")
_MISALIGNMENT_CATEGORIES = {
    "0.5": Category.HORIZONTAL_MISALIGNMENT_0_5MM,
    "1.0": Category.HORIZONTAL_MISALIGNMENT_1_0MM,
    "1.5": Category.HORIZONTAL_MISALIGNMENT_1_5MM,
    "2.0": Category.HORIZONTAL_MISALIGNMENT_2_0MM,
}


@dataclass(frozen=True)
class MafauldaRecord:
    """One multichannel recording."""

    channels: NDArray[np.float64]
    category: Category
    source_path: str
    sample_rate_hz: int = SAMPLE_RATE_HZ

    @property
    def num_samples(self) -> int:
        return self.channels.shape[0]

    @property
    def num_channels(self) -> int:
        return self.channels.shape[1]

    @property
    def is_full_length(self) -> bool:
        """False for fixtures and truncated files."""
        return self.num_samples == FULL_LENGTH


def infer_category(path: str | Path) -> Category:
    """Map the archive directory layout onto a category."""
    parts = [p.lower() for p in Path(path).parts]

    if "normal" in parts:
        return Category.NORMAL

    if any(p in _MISALIGNMENT_DIRS for p in parts):
        for part in parts:
            match = _MM_PATTERN.match(part)
            if match:
                key = f"{float(match.group(1)):.1f}"
                return _MISALIGNMENT_CATEGORIES.get(key, Category.OTHER)

    return Category.OTHER


def _first_misshapen_line(path: Path) -> Optional[tuple[int, int]]:
    """First 1-based line whose field count is not NUM_CHANNELS, with that count."""
    with path.open("r", newline="") as handle:
        for number, line in enumerate(handle, start=1):
            fields = line.rstrip("\r\n").count(",") + 1
            if fields != NUM_CHANNELS:
                return number, fields
    return None


def _locate_malformed_row(path: Path) -> MalformedRowError:
    """Re-read as text to find the first offending line."""
    text = pd.read_csv(
        path,
        header=None,
        dtype=str,
        keep_default_na=False,
        skip_blank_lines=False,
    )
    if text.shape[1] != NUM_CHANNELS:
        return MalformedRowError(
            str(path), 1, f"expected {NUM_CHANNELS} fields, found {text.shape[1]}"
        )

    numeric = text.apply(pd.to_numeric, errors="coerce").to_numpy(dtype=np.float64)
    bad_rows = np.flatnonzero(~np.isfinite(numeric).all(axis=1))
    row = int(bad_rows[0]) if bad_rows.size else 0
    tokens = text.iloc[row].tolist()
    if any(t is None or (isinstance(t, float) and np.isnan(t)) for t in tokens):
        reason = f"expected {NUM_CHANNELS} fields"
    else:
        bad = [t for t, v in zip(tokens, numeric[row]) if not np.isfinite(v)]
        reason = f"non-numeric token {bad[0]!r}" if bad else "unparseable row"
    return MalformedRowError(str(path), row + 1, reason)


def parse_csv(path: str | Path) -> MafauldaRecord:
    """
    Parse one MAFAULDA CSV recording.

    Raises:
        IoFailureError: if the file does not exist
        EmptyFileError: if it has no rows
        MalformedRowError: for a wrong field count or a non-numeric token
    """
    path = Path(path)
    if not path.is_file():
        raise IoFailureError(f"CSV file not found: {path}")

    try:
        frame = pd.read_csv(
            path,
            header=None,
            dtype=np.float64,
            skip_blank_lines=False,
        )
    except pd.errors.EmptyDataError as e:
        raise EmptyFileError(f"{path}: no rows") from e
    except pd.errors.ParserError as e:
        # pandas takes the width from line 1, so a short first row makes it blame a valid one
        misshapen = _first_misshapen_line(path)
        if misshapen:
            line, found = misshapen
            raise MalformedRowError(
                str(path), line, f"expected {NUM_CHANNELS} fields, found {found}"
            ) from e
        match = re.search(r"line (\d+)", str(e))
        line = int(match.group(1)) if match else 1
        raise MalformedRowError(str(path), line, f"expected {NUM_CHANNELS} fields") from e
    except ValueError:
        raise _locate_malformed_row(path)
    except OSError as e:
        raise IoFailureError(f"Cannot read {path}: {e}") from e

    channels = frame.to_numpy(dtype=np.float64)
    if channels.shape[0] == 0:
        raise EmptyFileError(f"{path}: no rows")
    if channels.shape[1] != NUM_CHANNELS or not np.isfinite(channels).all():
        raise _locate_malformed_row(path)

    channels.flags.writeable = False
    record = MafauldaRecord(channels, infer_category(path), str(path))

    if not record.is_full_length:
        logger.warning(
            f"{path.name}: {record.num_samples} rows (genuine recordings have {FULL_LENGTH})"
        )

    return record


def extract_microphone(rec: MafauldaRecord, column_index: int = DEFAULT_MIC_COLUMN) -> Waveform:
    """Project one channel out of a recording."""
    if not 0 <= column_index < rec.num_channels:
        raise ColumnOutOfRangeError(
            f"column {column_index} outside [0, {rec.num_channels})"
        )
    return Waveform(rec.channels[:, column_index], rec.sample_rate_hz)


def csv_to_wav(
    csv_path: str | Path,
    wav_path: str | Path,
    column_index: int = DEFAULT_MIC_COLUMN,
) -> Waveform:
    """
    Convert one recording's microphone channel to a float32 mono WAV.

    Returns:
        The extracted waveform (before float32 rounding)
    """
    record = parse_csv(csv_path)
    wave = extract_microphone(record, column_index)
    write_wav(wav_path, wave)
    logger.debug(f"Converted {csv_path} -> {wav_path} ({wave.duration_s:.3f} s)")
    return wave


def find_recordings(root: str | Path, pattern: Optional[str] = "*.csv") -> list[Path]:
    """All CSV recordings under ``root`` in stable (sorted) order."""
    return sorted(Path(root).rglob(pattern))
