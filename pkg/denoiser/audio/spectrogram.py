"""
STFT power spectrograms and their CSV / PGM exports.

Scaling convention: entries are |rfft(window * frame)|^2 with numpy's
unnormalized forward FFT, one-sided (bins 0..window_size/2).
"""

from dataclasses import dataclass
from enum import Enum
from pathlib import Path

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from numpy.typing import NDArray
from scipy.signal import get_window

from denoiser.audio.waveform import Waveform
from denoiser.errors import IoFailureError, SignalTooShortError

DEFAULT_WINDOW = 1024
DEFAULT_HOP = 512


class WindowKind(str, Enum):
    """Analysis windows."""
    HANN = "hann"
    RECTANGULAR = "rectangular"


_SCIPY_NAMES = {WindowKind.HANN: "hann", WindowKind.RECTANGULAR: "boxcar"}


@dataclass(frozen=True)
class PowerSpectrogram:
    """Frames x bins matrix of nonnegative power."""

    power: NDArray[np.float64]
    window_size: int
    hop: int
    sample_rate_hz: int
    window_kind: WindowKind

    @property
    def num_frames(self) -> int:
        return self.power.shape[0]

    @property
    def num_bins(self) -> int:
        return self.power.shape[1]

    def bin_frequencies(self) -> NDArray[np.float64]:
        return np.fft.rfftfreq(self.window_size, 1.0 / self.sample_rate_hz)


def stft_power(
    w: Waveform,
    window_size: int = DEFAULT_WINDOW,
    hop: int = DEFAULT_HOP,
    window_kind: WindowKind = WindowKind.HANN,
) -> PowerSpectrogram:
    """
    Short-time power spectrum of a waveform.

    Raises:
        SignalTooShortError: if the waveform is shorter than one window
        ValueError: for a non power-of-two window or hop < 1
    """
    if window_size < 1 or window_size & (window_size - 1):
        raise ValueError(f"window_size must be a power of two, got {window_size}")
    if hop < 1:
        raise ValueError(f"hop must be >= 1, got {hop}")
    if len(w) < window_size:
        raise SignalTooShortError(
            f"signal has {len(w)} samples, window needs {window_size}"
        )

    kind = WindowKind(window_kind)
    taper = get_window(_SCIPY_NAMES[kind], window_size, fftbins=True)

    frames = sliding_window_view(w.samples, window_size)[::hop]
    spectrum = np.fft.rfft(frames * taper, axis=1)
    power = spectrum.real ** 2 + spectrum.imag ** 2

    return PowerSpectrogram(power, window_size, hop, w.sample_rate_hz, kind)


def write_spectrogram_csv(spec: PowerSpectrogram, path: str | Path) -> Path:
    """One row per frame, comma-separated bins."""
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, spec.power, delimiter=",", fmt="%.10e")
    except OSError as e:
        raise IoFailureError(f"Cannot write spectrogram {path}: {e}") from e
    return path


def spectrogram_image(spec: PowerSpectrogram) -> NDArray[np.uint8]:
    """
    8-bit log-power image, min-max scaled per image.

    Rows are frequency bins with the highest bin on top; columns are frames.
    """
    log_power = np.log10(spec.power + 1e-20).T[::-1]
    lo, hi = log_power.min(), log_power.max()
    if hi == lo:
        return np.zeros(log_power.shape, dtype=np.uint8)
    scaled = (log_power - lo) / (hi - lo)
    return np.round(scaled * 255.0).astype(np.uint8)


def write_spectrogram_pgm(spec: PowerSpectrogram, path: str | Path) -> Path:
    """Binary (P5) grayscale PGM of spectrogram_image."""
    path = Path(path)
    image = spectrogram_image(spec)
    height, width = image.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(header + np.ascontiguousarray(image).tobytes())
    except OSError as e:
        raise IoFailureError(f"Cannot write image {path}: {e}") from e
    return path
