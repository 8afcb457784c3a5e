"""
WAV reading and writing.

Reads PCM 16-bit and IEEE float32 files at their declared rate; writes
float32 mono.
"""

from pathlib import Path

import numpy as np
from loguru import logger
from scipy.io import wavfile

from denoiser.audio.waveform import Waveform
from denoiser.errors import IoFailureError, WavFormatError


def read_wav(path: str | Path, mix_to_mono: bool = True) -> Waveform:
    """
    Read a WAV file into a Waveform.

    PCM16 samples are scaled by 1/32768; multi-channel files are averaged
    across channels when ``mix_to_mono`` is set.

    Raises:
        IoFailureError: if the file is missing or unreadable
        WavFormatError: for encodings other than PCM16 / float32
    """
    path = Path(path)
    try:
        rate, data = wavfile.read(path)
    except FileNotFoundError as e:
        raise IoFailureError(f"WAV file not found: {path}") from e
    except (OSError, ValueError) as e:
        raise IoFailureError(f"Cannot read WAV {path}: {e}") from e

    if data.dtype == np.int16:
        samples = data.astype(np.float64) / 32768.0
    elif data.dtype == np.float32:
        samples = data.astype(np.float64)
    else:
        raise WavFormatError(f"{path}: unsupported sample format {data.dtype}")

    if samples.ndim == 2:
        if not mix_to_mono and samples.shape[1] != 1:
            raise WavFormatError(f"{path}: expected mono, found {samples.shape[1]} channels")
        samples = samples.mean(axis=1)

    logger.debug(f"Read {path.name}: {samples.size} samples at {rate} Hz")
    return Waveform(samples, rate)


def write_wav(path: str | Path, w: Waveform) -> Path:
    """Write a Waveform as float32 mono at its own sample rate."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        wavfile.write(path, w.sample_rate_hz, w.samples.astype(np.float32))
    except OSError as e:
        raise IoFailureError(f"Cannot write WAV {path}: {e}") from e
    return path
