"""
Waveform values and min-max normalization.

Signals are immutable: sample arrays are copied to float64 and marked
read-only on construction.
"""

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from denoiser.errors import ConstantSignalError, InvalidWaveformError

DEFAULT_SAMPLE_RATE = 50_000


def _frozen(samples: ArrayLike) -> NDArray[np.float64]:
    arr = np.array(samples, dtype=np.float64, copy=True).reshape(-1)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Waveform:
    """A finite sampled signal."""

    samples: NDArray[np.float64]
    sample_rate_hz: int = DEFAULT_SAMPLE_RATE

    def __post_init__(self):
        arr = _frozen(self.samples)
        if arr.size == 0:
            raise InvalidWaveformError("waveform has no samples")
        if not np.all(np.isfinite(arr)):
            raise InvalidWaveformError("waveform contains NaN or Inf")
        if int(self.sample_rate_hz) <= 0:
            raise InvalidWaveformError(f"sample rate must be positive, got {self.sample_rate_hz}")
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_rate_hz", int(self.sample_rate_hz))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate_hz


@dataclass(frozen=True)
class NormParams:
    """min(y) and max(y) of the source signal."""

    min_val: float
    max_val: float

    def __post_init__(self):
        if not self.max_val > self.min_val:
            raise ConstantSignalError(
                f"max ({self.max_val}) must exceed min ({self.min_val})"
            )

    @property
    def span(self) -> float:
        return self.max_val - self.min_val


@dataclass(frozen=True)
class NormalizedWaveform:
    """
    A signal scaled into [0, 1] plus the parameters that undo the scaling.

    The constructor checks the range only; minmax_normalize additionally
    guarantees that 0 and 1 are both attained.
    """

    samples: NDArray[np.float64]
    sample_rate_hz: int
    norm: NormParams

    def __post_init__(self):
        arr = _frozen(self.samples)
        if arr.size == 0:
            raise InvalidWaveformError("waveform has no samples")
        if not np.all(np.isfinite(arr)) or arr.min() < 0.0 or arr.max() > 1.0:
            raise InvalidWaveformError("normalized samples must lie in [0, 1]")
        if int(self.sample_rate_hz) <= 0:
            raise InvalidWaveformError(f"sample rate must be positive, got {self.sample_rate_hz}")
        object.__setattr__(self, "samples", arr)
        object.__setattr__(self, "sample_rate_hz", int(self.sample_rate_hz))

    def __len__(self) -> int:
        return self.samples.size


def minmax_normalize(w: Waveform) -> NormalizedWaveform:
    """
    Scale a waveform into [0, 1] with its own min and max.

    Raises:
        ConstantSignalError: if every sample is equal
    """
    lo = float(w.samples.min())
    hi = float(w.samples.max())
    if hi == lo:
        raise ConstantSignalError(f"constant signal ({lo}); normalization undefined")

    scaled = (w.samples - lo) / (hi - lo)
    # endpoints map exactly; guard against rounding just past them
    np.clip(scaled, 0.0, 1.0, out=scaled)
    return NormalizedWaveform(scaled, w.sample_rate_hz, NormParams(lo, hi))


def denormalize(n: NormalizedWaveform) -> Waveform:
    """Invert minmax_normalize."""
    return Waveform(n.samples * n.norm.span + n.norm.min_val, n.sample_rate_hz)
