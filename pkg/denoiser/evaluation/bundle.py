"""
Clean / noisy / denoised comparison bundle: WAVs, spectrogram CSVs and PGMs.
"""

from pathlib import Path

from loguru import logger

from denoiser.audio import (
    Waveform,
    stft_power,
    write_spectrogram_csv,
    write_spectrogram_pgm,
    write_wav,
)
from denoiser.audio.spectrogram import DEFAULT_HOP, DEFAULT_WINDOW
from denoiser.errors import LengthMismatchError

BUNDLE_NAMES = ("clean", "noisy", "denoised")


def _fit_window(length: int, window_size: int, hop: int) -> tuple[int, int]:
    """Shrink the window to the largest power of two that fits a short signal."""
    if length >= window_size:
        return window_size, hop
    fitted = 1 << (length.bit_length() - 1)
    return fitted, max(1, fitted // 2)


def emit_comparison_bundle(
    clean: Waveform,
    noisy: Waveform,
    denoised: Waveform,
    out_dir: str | Path,
    window_size: int = DEFAULT_WINDOW,
    hop: int = DEFAULT_HOP,
) -> list[Path]:
    """
    Write ``<name>.wav``, ``<name>_spectrogram.csv`` and
    ``<name>_spectrogram.pgm`` for clean, noisy and denoised.

    Returns:
        The nine written paths
    """
    waves = dict(zip(BUNDLE_NAMES, (clean, noisy, denoised)))
    lengths = {len(w) for w in waves.values()}
    if len(lengths) != 1:
        raise LengthMismatchError(f"bundle signals differ in length: {sorted(lengths)}")

    window, step = _fit_window(lengths.pop(), window_size, hop)
    if window != window_size:
        logger.debug(f"Short signal: spectrogram window reduced to {window}")

    out_dir = Path(out_dir)
    written = []
    for name, wave in waves.items():
        spec = stft_power(wave, window, step)
        written.append(write_wav(out_dir / f"{name}.wav", wave))
        written.append(write_spectrogram_csv(spec, out_dir / f"{name}_spectrogram.csv"))
        written.append(write_spectrogram_pgm(spec, out_dir / f"{name}_spectrogram.pgm"))

    logger.info(f"Comparison bundle written to {out_dir}")
    return written
