"""
Signal core: waveforms, normalization, WAV I/O and spectrograms.
"""

from denoiser.audio.waveform import (
    DEFAULT_SAMPLE_RATE,
    NormalizedWaveform,
    NormParams,
    Waveform,
    denormalize,
    minmax_normalize,
)
from denoiser.audio.spectrogram import (
    PowerSpectrogram,
    WindowKind,
    spectrogram_image,
    stft_power,
    write_spectrogram_csv,
    write_spectrogram_pgm,
)
from denoiser.audio.wavio import read_wav, write_wav

__all__ = [
    "DEFAULT_SAMPLE_RATE",
    "Waveform",
    "NormParams",
    "NormalizedWaveform",
    "minmax_normalize",
    "denormalize",
    "PowerSpectrogram",
    "WindowKind",
    "stft_power",
    "spectrogram_image",
    "write_spectrogram_csv",
    "write_spectrogram_pgm",
    "read_wav",
    "write_wav",
]
