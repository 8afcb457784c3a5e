"""Tests for STFT power spectrograms."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from denoiser.audio import (
    Waveform,
    WindowKind,
    spectrogram_image,
    stft_power,
    write_spectrogram_csv,
    write_spectrogram_pgm,
)
from denoiser.errors import SignalTooShortError


def _dft_power(frame: np.ndarray) -> np.ndarray:
    n = frame.size
    k = np.arange(n // 2 + 1)[:, None]
    t = np.arange(n)[None, :]
    basis = np.exp(-2j * np.pi * k * t / n)
    return np.abs(basis @ frame) ** 2


class TestStftPower:
    """Tests for stft_power."""

    def test_shape(self, rng):
        """1024 samples with window 256, hop 128 give 7 frames of 129 bins."""
        spec = stft_power(Waveform(rng.normal(size=1024), 50_000), 256, 128)
        assert spec.power.shape == (7, 129)
        assert spec.num_frames == 7
        assert spec.num_bins == 129

    def test_sine_peaks_at_its_bin(self):
        """A sine at bin k0 puts the maximum of every frame at k0."""
        rate, n, k0 = 50_000, 1024, 40
        t = np.arange(8192) / rate
        w = Waveform(np.sin(2 * np.pi * (k0 * rate / n) * t), rate)

        spec = stft_power(w, n, 512)
        assert np.all(np.argmax(spec.power, axis=1) == k0)
        assert spec.bin_frequencies()[k0] == pytest.approx(k0 * rate / n)

    def test_zeros(self):
        """Silence has zero power everywhere."""
        spec = stft_power(Waveform(np.zeros(2048), 50_000), 1024, 512)
        assert np.all(spec.power == 0.0)

    def test_power_is_nonnegative(self, rng):
        spec = stft_power(Waveform(rng.normal(size=4096), 50_000))
        assert np.all(spec.power >= 0.0)

    def test_rectangular_energy(self, rng):
        """One rectangular frame: P0 + 2*sum(P_mid) + P_last == N * sum(x**2)."""
        x = rng.normal(size=512)
        p = stft_power(Waveform(x, 50_000), 512, 512, WindowKind.RECTANGULAR).power[0]

        one_sided = p[0] + 2 * p[1:-1].sum() + p[-1]
        assert one_sided == pytest.approx(512 * np.sum(x ** 2), rel=1e-9)

    @given(
        st.sampled_from([8, 16, 64, 128]),
        arrays(np.float64, 128, elements=st.floats(-10, 10, allow_nan=False)),
    )
    def test_matches_direct_dft(self, size, samples):
        """Rectangular frames agree with a direct DFT."""
        spec = stft_power(Waveform(samples, 50_000), size, size, WindowKind.RECTANGULAR)
        for i in range(spec.num_frames):
            expected = _dft_power(samples[i * size:(i + 1) * size])
            np.testing.assert_allclose(spec.power[i], expected, rtol=1e-6, atol=1e-6)

    def test_hann_is_default(self, rng):
        x = rng.normal(size=2048)
        default = stft_power(Waveform(x, 50_000))
        assert default.window_kind == WindowKind.HANN
        assert default.window_size == 1024
        assert default.hop == 512
        assert default.num_frames == 3

    @pytest.mark.parametrize("size,hop", [(1000, 256), (0, 256), (256, 0)])
    def test_invalid_arguments(self, size, hop):
        """Non power-of-two windows and hop < 1 are rejected."""
        with pytest.raises(ValueError):
            stft_power(Waveform(np.ones(2048), 50_000), size, hop)

    def test_signal_too_short(self):
        with pytest.raises(SignalTooShortError):
            stft_power(Waveform(np.ones(100), 50_000), 256, 128)


class TestSpectrogramExports:
    """Tests for the CSV and PGM writers."""

    def test_csv(self, tmp_path, rng):
        """The CSV holds one row per frame."""
        spec = stft_power(Waveform(rng.normal(size=1024), 50_000), 256, 128)
        path = write_spectrogram_csv(spec, tmp_path / "s" / "spec.csv")

        loaded = np.loadtxt(path, delimiter=",")
        assert loaded.shape == (7, 129)
        np.testing.assert_allclose(loaded, spec.power, rtol=1e-9)

    def test_pgm(self, tmp_path, rng):
        """The PGM header carries frames x bins and the payload is 8-bit."""
        spec = stft_power(Waveform(rng.normal(size=1024), 50_000), 256, 128)
        path = write_spectrogram_pgm(spec, tmp_path / "spec.pgm")

        data = path.read_bytes()
        header = b"P5\n7 129\n255\n"
        assert data.startswith(header)
        assert len(data) == len(header) + 7 * 129

    def test_image_orientation(self):
        """The highest bin is the top row; the image spans 0..255."""
        t = np.arange(4096) / 50_000
        spec = stft_power(Waveform(np.sin(2 * np.pi * 12_500 * t), 50_000), 256, 256)
        image = spectrogram_image(spec)

        assert image.shape == (129, spec.num_frames)
        assert image.min() == 0
        assert image.max() == 255
        peak_bin = int(np.argmax(spec.power[0]))
        assert peak_bin == 64
        assert np.argmax(image[:, 0]) == 128 - peak_bin

    def test_flat_image(self):
        spec = stft_power(Waveform(np.zeros(512), 50_000), 256, 256)
        assert np.all(spectrogram_image(spec) == 0)
