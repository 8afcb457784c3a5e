"""
Per-sound mean squared error in the normalized [0, 1] domain.
"""

import numpy as np
from numpy.typing import ArrayLike

from denoiser.audio import NormalizedWaveform
from denoiser.errors import LengthMismatchError


def _samples(x: NormalizedWaveform | ArrayLike) -> np.ndarray:
    if isinstance(x, NormalizedWaveform):
        return x.samples
    return np.asarray(x, dtype=np.float64).reshape(-1)


def per_sound_mse(clean_norm: NormalizedWaveform | ArrayLike, denoised: NormalizedWaveform | ArrayLike) -> float:
    """Mean squared difference over every sample of one sound."""
    a = _samples(clean_norm)
    b = _samples(denoised)
    if a.size != b.size:
        raise LengthMismatchError(f"clean has {a.size} samples, denoised has {b.size}")
    if a.size == 0:
        raise LengthMismatchError("cannot score an empty sound")
    return float(np.mean(np.square(a - b)))


def baseline_mse(clean_norm: NormalizedWaveform, noisy_norm: NormalizedWaveform) -> float:
    """MSE of the untouched noisy input, the floor a denoiser must beat."""
    return per_sound_mse(clean_norm, noisy_norm)
