"""Tests for synthetic motor recordings."""

import numpy as np
import pytest

from denoiser.audio import stft_power
from denoiser.dataset import parse_csv, synth_corpus, synth_motor_sound, write_synthetic_recording
from denoiser.errors import AliasedHarmonicError
from denoiser.models import Category, SyntheticMotorConfig


class TestSynthMotorSound:
    """Tests for synth_motor_sound."""

    def test_single_harmonic_is_sine(self):
        """One harmonic with unit amplitude is a pure sine."""
        cfg = SyntheticMotorConfig(rotation_hz=50.0, num_harmonics=1, duration_s=0.02, seed=3)
        w = synth_motor_sound(cfg)

        assert len(w) == 1000
        assert np.max(np.abs(w.samples)) == pytest.approx(1.0, abs=1e-3)
        t = np.arange(1000) / 50_000
        phase = np.random.default_rng(3).uniform(0.0, 2.0 * np.pi, 1)[0]
        np.testing.assert_allclose(w.samples, np.sin(2 * np.pi * 50.0 * t + phase), atol=1e-12)

    def test_deterministic(self):
        cfg = SyntheticMotorConfig(seed=11)
        np.testing.assert_array_equal(synth_motor_sound(cfg).samples, synth_motor_sound(cfg).samples)

    def test_seed_changes_phases(self):
        a = synth_motor_sound(SyntheticMotorConfig(seed=1)).samples
        b = synth_motor_sound(SyntheticMotorConfig(seed=2)).samples
        assert not np.allclose(a, b)

    def test_aliased_harmonic(self):
        """A harmonic at or past Nyquist is rejected."""
        with pytest.raises(AliasedHarmonicError):
            synth_motor_sound(SyntheticMotorConfig(rotation_hz=5000.0, num_harmonics=5))

    def test_fundamental_dominates(self):
        """The spectrum peaks within one bin of 60 Hz."""
        w = synth_motor_sound(SyntheticMotorConfig(rotation_hz=60.0, duration_s=0.5))
        spec = stft_power(w, 4096, 2048)

        freqs = spec.bin_frequencies()
        peak = freqs[np.argmax(spec.power.mean(axis=0))]
        assert abs(peak - 60.0) <= 50_000 / 4096

    def test_band_limited(self):
        """Less than 1% of the energy lies above the top harmonic."""
        w = synth_motor_sound(SyntheticMotorConfig(rotation_hz=60.0, num_harmonics=3, duration_s=1.0))
        power = np.abs(np.fft.rfft(w.samples)) ** 2
        freqs = np.fft.rfftfreq(len(w), 1 / 50_000)

        above = power[freqs > 3 * 60.0 + 10.0].sum()
        assert above / power.sum() < 0.01


class TestSynthCorpus:
    """Tests for the synthetic corpus writer."""

    def test_recording_layout(self, tmp_path):
        """The sound lands in the microphone column of an 8-column CSV."""
        cfg = SyntheticMotorConfig(duration_s=0.01, seed=5)
        path = write_synthetic_recording(tmp_path / "normal" / "x.csv", cfg)

        rec = parse_csv(path)
        assert rec.channels.shape == (500, 8)
        assert rec.category == Category.NORMAL
        np.testing.assert_allclose(rec.channels[:, 7], synth_motor_sound(cfg).samples, rtol=1e-8, atol=1e-9)

    def test_corpus_files(self, tmp_path):
        paths = synth_corpus(tmp_path, 5, seed=2, duration_s=0.01)

        assert [p.name for p in paths] == [f"{i:04d}.csv" for i in range(5)]
        assert all(p.parent == tmp_path / "normal" for p in paths)
        assert all(p.is_file() for p in paths)

    def test_corpus_deterministic(self, tmp_path):
        a = synth_corpus(tmp_path / "a", 3, seed=9, duration_s=0.01)
        b = synth_corpus(tmp_path / "b", 3, seed=9, duration_s=0.01)
        assert [p.read_bytes() for p in a] == [p.read_bytes() for p in b]

    @pytest.mark.parametrize("kwargs", [{"count": 0}, {"count": 2, "f_min": 80.0, "f_max": 70.0}])
    def test_invalid_arguments(self, tmp_path, kwargs):
        with pytest.raises(ValueError):
            synth_corpus(tmp_path, **kwargs)
