"""
Noise sources: white Gaussian, blue (power proportional to frequency) and
recorded noise files.

Every generator takes an explicit seed; there is no shared RNG state.
"""

import math
from pathlib import Path

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from denoiser.audio import DEFAULT_SAMPLE_RATE, Waveform, read_wav
from denoiser.errors import UnsupportedRateError

MIN_BLUE_LENGTH = 16


def _uniforms(seed: int, size: int) -> NDArray[np.float64]:
    """Uniforms in [0, 1) from the counter-based Philox generator."""
    return np.random.Generator(np.random.Philox(seed)).random(size)


def _box_muller(length: int, seed: int) -> NDArray[np.float64]:
    pairs = math.ceil(length / 2)
    u = _uniforms(seed, 2 * pairs).reshape(pairs, 2)
    radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
    angle = 2.0 * np.pi * u[:, 1]
    return np.column_stack((radius * np.cos(angle), radius * np.sin(angle))).ravel()[:length]


def gaussian_noise(
    length: int,
    seed: int,
    sample_rate_hz: int = DEFAULT_SAMPLE_RATE,
) -> Waveform:
    """i.i.d. N(0, 1) samples via Box-Muller."""
    if length < 1:
        raise ValueError("length must be >= 1")
    return Waveform(_box_muller(length, seed), sample_rate_hz)


def blue_noise(length: int, sample_rate_hz: int, seed: int) -> Waveform:
    """
    Blue noise with unit sample variance.

    White Gaussian noise is shaped by a gain of sqrt(f) in the frequency
    domain, so its power grows linearly with frequency. The DC bin is zeroed.
    """
    if length < MIN_BLUE_LENGTH:
        raise ValueError(f"blue noise needs at least {MIN_BLUE_LENGTH} samples")

    spectrum = np.fft.rfft(_box_muller(length, seed))
    freqs = np.fft.rfftfreq(length, d=1.0 / sample_rate_hz)
    spectrum *= np.sqrt(freqs)
    spectrum[0] = 0.0

    shaped = np.fft.irfft(spectrum, n=length)
    shaped /= shaped.std()
    return Waveform(shaped, sample_rate_hz)


def load_noise(path: str | Path, target_length: int, target_rate_hz: int) -> Waveform:
    """
    Load a recorded noise file, fitted to a target length and rate.

    Files at an integer multiple of the target rate are decimated by
    averaging consecutive blocks. The result is trimmed, or tiled cyclically
    when it is too short.

    Raises:
        UnsupportedRateError: if the rates are not related by an integer factor
        IoFailureError: if the file cannot be read
    """
    if target_length < 1:
        raise ValueError("target_length must be >= 1")

    wave = read_wav(path, mix_to_mono=True)
    samples = wave.samples

    if wave.sample_rate_hz != target_rate_hz:
        if wave.sample_rate_hz < target_rate_hz or wave.sample_rate_hz % target_rate_hz:
            raise UnsupportedRateError(
                f"{path}: {wave.sample_rate_hz} Hz is not an integer multiple of {target_rate_hz} Hz"
            )
        factor = wave.sample_rate_hz // target_rate_hz
        usable = (samples.size // factor) * factor
        if usable == 0:
            raise UnsupportedRateError(f"{path}: too short to decimate by {factor}")
        samples = samples[:usable].reshape(-1, factor).mean(axis=1)
        logger.debug(f"Decimated {Path(path).name} by {factor}")

    if samples.size < target_length:
        logger.debug(f"Tiling {Path(path).name}: {samples.size} -> {target_length} samples")

    return Waveform(np.resize(samples, target_length), target_rate_hz)
