"""Tests for noise synthesis and corruption."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.io import wavfile

from denoiser.audio import Waveform
from denoiser.errors import LengthMismatchError, RateMismatchError, UnsupportedRateError
from denoiser.models import NoiseKind, NoiseSpec
from denoiser.noise import (
    blue_noise,
    corrupt,
    corrupt_with_spec,
    derive_file_seed,
    gaussian_noise,
    load_noise,
    make_noise,
)


def _band_power(samples: np.ndarray, rate: int, lo: float, hi: float) -> float:
    power = np.abs(np.fft.rfft(samples)) ** 2
    freqs = np.fft.rfftfreq(samples.size, 1 / rate)
    return float(power[(freqs >= lo) & (freqs < hi)].mean())


class TestGaussianNoise:
    """Tests for gaussian_noise."""

    def test_moments(self):
        """Mean near 0 and standard deviation near 1."""
        x = gaussian_noise(100_000, seed=0).samples
        assert abs(x.mean()) < 0.02
        assert 0.99 <= x.std() <= 1.01

    def test_uncorrelated(self):
        x = gaussian_noise(100_000, seed=1).samples
        lag1 = np.corrcoef(x[:-1], x[1:])[0, 1]
        assert abs(lag1) <= 0.01

    def test_deterministic(self):
        np.testing.assert_array_equal(gaussian_noise(101, 5).samples, gaussian_noise(101, 5).samples)
        assert len(gaussian_noise(101, 5)) == 101

    def test_seeds_differ(self):
        assert not np.allclose(gaussian_noise(64, 1).samples, gaussian_noise(64, 2).samples)

    def test_rate(self):
        assert gaussian_noise(10, 0, 44_100).sample_rate_hz == 44_100


class TestBlueNoise:
    """Tests for blue_noise."""

    def test_unit_variance_zero_mean(self):
        x = blue_noise(8192, 50_000, seed=3).samples
        assert x.var() == pytest.approx(1.0, abs=1e-9)
        assert abs(x.mean()) < 1e-9

    def test_spectral_slope(self):
        """Averaged log power rises with slope close to 1 in log frequency."""
        n, rate = 8192, 50_000
        freqs = np.fft.rfftfreq(n, 1 / rate)
        power = np.mean(
            [np.abs(np.fft.rfft(blue_noise(n, rate, seed).samples)) ** 2 for seed in range(20)],
            axis=0,
        )
        band = (freqs >= 500) & (freqs <= 12_500)
        slope, _ = np.polyfit(np.log(freqs[band]), np.log(power[band]), 1)
        assert 0.7 <= slope <= 1.3

    def test_octave_ratio(self):
        """Three octaves up carries at least six times the power."""
        ratios = []
        for seed in range(20):
            x = blue_noise(8192, 50_000, seed).samples
            ratios.append(_band_power(x, 50_000, 8000, 16_000) / _band_power(x, 50_000, 1000, 2000))
        assert np.mean(ratios) >= 6.0

    def test_too_short(self):
        with pytest.raises(ValueError):
            blue_noise(8, 50_000, 0)


class TestLoadNoise:
    """Tests for load_noise."""

    def _write(self, path, rate, samples):
        wavfile.write(path, rate, np.asarray(samples, dtype=np.float32))
        return path

    def test_passthrough(self, tmp_path):
        path = self._write(tmp_path / "n.wav", 50_000, [0.1, -0.2, 0.3, -0.4])
        w = load_noise(path, 4, 50_000)
        np.testing.assert_allclose(w.samples, [0.1, -0.2, 0.3, -0.4], atol=1e-7)

    def test_trim(self, tmp_path):
        path = self._write(tmp_path / "n.wav", 50_000, [0.1, -0.2, 0.3, -0.4])
        np.testing.assert_allclose(load_noise(path, 2, 50_000).samples, [0.1, -0.2], atol=1e-7)

    def test_tiling(self, tmp_path):
        """Short files repeat cyclically."""
        path = self._write(tmp_path / "n.wav", 50_000, [0.25, 0.5, 0.75])
        w = load_noise(path, 7, 50_000)
        np.testing.assert_allclose(w.samples, [0.25, 0.5, 0.75, 0.25, 0.5, 0.75, 0.25])

    def test_unrelated_rate(self, tmp_path):
        path = self._write(tmp_path / "n.wav", 44_100, np.zeros(100))
        with pytest.raises(UnsupportedRateError):
            load_noise(path, 100, 50_000)

    def test_decimation(self, tmp_path):
        """A 100 kHz file is averaged in pairs."""
        path = self._write(tmp_path / "n.wav", 100_000, [0.125, 0.375, 0.5, 0.75])
        w = load_noise(path, 2, 50_000)
        assert w.sample_rate_hz == 50_000
        np.testing.assert_allclose(w.samples, [0.25, 0.625])


class TestCorrupt:
    """Tests for corrupt and per-file recipes."""

    def test_example(self):
        clean = Waveform([1.0, 2.0, 3.0], 50_000)
        noise = Waveform([1.0, -1.0, 0.5], 50_000)
        np.testing.assert_allclose(corrupt(clean, noise, 0.5).samples, [1.5, 1.5, 3.25])

    def test_zero_factor_is_identity(self):
        clean = Waveform([1.0, 2.0, 3.0], 50_000)
        noise = Waveform([9.0, 9.0, 9.0], 50_000)
        np.testing.assert_array_equal(corrupt(clean, noise, 0.0).samples, clean.samples)

    @given(
        st.floats(0, 10, allow_nan=False),
        st.floats(0, 10, allow_nan=False),
    )
    def test_linear_in_factor(self, a, b):
        """corrupt(c, n, a + b) == corrupt(c, n, a) + b * n."""
        clean = Waveform(np.linspace(-1, 1, 32), 50_000)
        noise = gaussian_noise(32, 7)
        lhs = corrupt(clean, noise, a + b).samples
        rhs = corrupt(clean, noise, a).samples + b * noise.samples
        np.testing.assert_allclose(lhs, rhs, atol=1e-9)

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            corrupt(Waveform([1.0, 2.0], 50_000), Waveform([1.0], 50_000), 0.1)

    def test_rate_mismatch(self):
        with pytest.raises(RateMismatchError):
            corrupt(Waveform([1.0, 2.0], 50_000), Waveform([1.0, 2.0], 44_100), 0.1)

    @pytest.mark.parametrize("factor", [-0.1, float("nan"), float("inf")])
    def test_bad_factor(self, factor):
        w = Waveform([1.0, 2.0], 50_000)
        with pytest.raises(ValueError):
            corrupt(w, w, factor)

    def test_derive_file_seed(self):
        """Seeds are stable, 63-bit and differ between files."""
        a = derive_file_seed(0, "normal/0001")
        assert a == derive_file_seed(0, "normal/0001")
        assert 0 <= a < 2**63
        assert a != derive_file_seed(0, "normal/0002")
        assert a != derive_file_seed(1, "normal/0001")
        assert a != derive_file_seed(0, "normal/0001", noise_seed=1)

    def test_make_noise_kinds(self, tmp_path):
        gauss = make_noise(NoiseSpec(kind=NoiseKind.GAUSSIAN), 64, 50_000, 4)
        np.testing.assert_array_equal(gauss.samples, gaussian_noise(64, 4).samples)

        blue = make_noise(NoiseSpec(kind="blue"), 64, 50_000, 4)
        np.testing.assert_array_equal(blue.samples, blue_noise(64, 50_000, 4).samples)

        path = tmp_path / "hum.wav"
        wavfile.write(path, 50_000, np.array([0.5, -0.5], dtype=np.float32))
        hum = make_noise(NoiseSpec(kind="file", path=str(path)), 5, 50_000, 4)
        np.testing.assert_allclose(hum.samples, [0.5, -0.5, 0.5, -0.5, 0.5])

    def test_corrupt_with_spec(self):
        clean = Waveform(np.zeros(128), 50_000)
        noisy = corrupt_with_spec(clean, NoiseSpec(factor=0.2), seed=9)
        np.testing.assert_allclose(noisy.samples, 0.2 * gaussian_noise(128, 9).samples)
