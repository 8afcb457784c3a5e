"""
Synthetic motor-like recordings for desk-scale runs and tests.
"""

from pathlib import Path

import numpy as np
from loguru import logger

from denoiser.audio import Waveform
from denoiser.dataset.mafaulda import DEFAULT_MIC_COLUMN, NUM_CHANNELS
from denoiser.errors import AliasedHarmonicError, IoFailureError
from denoiser.models import SyntheticMotorConfig


def synth_motor_sound(cfg: SyntheticMotorConfig) -> Waveform:
    """
    Sum of decaying harmonics of the rotation frequency with seeded phases.

    Raises:
        AliasedHarmonicError: if the top harmonic reaches Nyquist
    """
    nyquist = cfg.sample_rate_hz / 2.0
    if cfg.rotation_hz * cfg.num_harmonics >= nyquist:
        raise AliasedHarmonicError(
            f"harmonic {cfg.num_harmonics} of {cfg.rotation_hz} Hz exceeds Nyquist ({nyquist} Hz)"
        )

    n = max(1, int(round(cfg.duration_s * cfg.sample_rate_hz)))
    t = np.arange(n) / cfg.sample_rate_hz
    phases = np.random.default_rng(cfg.seed).uniform(0.0, 2.0 * np.pi, cfg.num_harmonics)

    h = np.arange(1, cfg.num_harmonics + 1)
    gains = cfg.amplitude * cfg.harmonic_decay ** (h - 1)
    samples = (gains[:, None] * np.sin(2.0 * np.pi * h[:, None] * cfg.rotation_hz * t + phases[:, None])).sum(axis=0)

    return Waveform(samples, cfg.sample_rate_hz)


def write_synthetic_recording(
    path: str | Path,
    cfg: SyntheticMotorConfig,
    mic_column: int = DEFAULT_MIC_COLUMN,
) -> Path:
    """
    Write a MAFAULDA-shaped CSV: the synthetic sound in ``mic_column`` and
    low-level tones of the same rotation in the other seven channels.
    """
    path = Path(path)
    mic = synth_motor_sound(cfg).samples
    t = np.arange(mic.size) / cfg.sample_rate_hz

    channels = np.empty((mic.size, NUM_CHANNELS))
    for c in range(NUM_CHANNELS):
        if c == mic_column:
            channels[:, c] = mic
        else:
            channels[:, c] = 0.05 * (c + 1) * np.cos(2.0 * np.pi * cfg.rotation_hz * t + c)

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, channels, delimiter=",", fmt="%.9e")
    except OSError as e:
        raise IoFailureError(f"Cannot write {path}: {e}") from e
    return path


def synth_corpus(
    out_dir: str | Path,
    count: int,
    seed: int = 0,
    f_min: float = 40.0,
    f_max: float = 70.0,
    duration_s: float = 1.0,
    category_dir: str = "normal",
    mic_column: int = DEFAULT_MIC_COLUMN,
) -> list[Path]:
    """
    Generate ``count`` synthetic recordings under ``out_dir/category_dir``.

    Fundamentals are drawn uniformly from [f_min, f_max]; every file gets its
    own phase seed.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if not 0 < f_min <= f_max:
        raise ValueError("need 0 < f_min <= f_max")

    rng = np.random.default_rng(seed)
    rotations = rng.uniform(f_min, f_max, count)
    harmonics = rng.integers(2, 5, count)

    paths = []
    for i in range(count):
        cfg = SyntheticMotorConfig(
            rotation_hz=float(rotations[i]),
            num_harmonics=int(harmonics[i]),
            harmonic_decay=0.5,
            duration_s=duration_s,
            seed=seed * 100_003 + i,
        )
        paths.append(write_synthetic_recording(Path(out_dir) / category_dir / f"{i:04d}.csv", cfg, mic_column))

    logger.info(f"Wrote {count} synthetic recordings to {Path(out_dir) / category_dir}")
    return paths
