"""
Additive corruption and per-file noise recipes.
"""

import hashlib
import math

from denoiser.audio import Waveform
from denoiser.errors import LengthMismatchError, RateMismatchError
from denoiser.models import NoiseKind, NoiseSpec
from denoiser.noise.generators import blue_noise, gaussian_noise, load_noise


def corrupt(clean: Waveform, noise: Waveform, noise_factor: float) -> Waveform:
    """
    clean + noise_factor * noise, sample by sample.

    Raises:
        LengthMismatchError: if the signals differ in length
        RateMismatchError: if they differ in sample rate
    """
    if not math.isfinite(noise_factor) or noise_factor < 0:
        raise ValueError(f"noise factor must be finite and >= 0, got {noise_factor}")
    if len(clean) != len(noise):
        raise LengthMismatchError(f"clean has {len(clean)} samples, noise has {len(noise)}")
    if clean.sample_rate_hz != noise.sample_rate_hz:
        raise RateMismatchError(
            f"clean is {clean.sample_rate_hz} Hz, noise is {noise.sample_rate_hz} Hz"
        )
    return Waveform(clean.samples + noise_factor * noise.samples, clean.sample_rate_hz)


def derive_file_seed(split_seed: int, file_id: str, noise_seed: int = 0) -> int:
    """Stable 63-bit seed for one file, independent of PYTHONHASHSEED."""
    digest = hashlib.sha256(f"{split_seed}:{noise_seed}:{file_id}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") & ((1 << 63) - 1)


def make_noise(spec: NoiseSpec, length: int, sample_rate_hz: int, seed: int) -> Waveform:
    """Unit-scale noise of the recipe's kind; the factor is applied by corrupt()."""
    kind = NoiseKind(spec.kind)
    if kind == NoiseKind.GAUSSIAN:
        return gaussian_noise(length, seed, sample_rate_hz)
    if kind == NoiseKind.BLUE:
        return blue_noise(length, sample_rate_hz, seed)
    return load_noise(spec.file_path, length, sample_rate_hz)


def corrupt_with_spec(clean: Waveform, spec: NoiseSpec, seed: int) -> Waveform:
    noise = make_noise(spec, len(clean), clean.sample_rate_hz, seed)
    return corrupt(clean, noise, spec.noise_factor)
