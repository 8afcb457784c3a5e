"""Tests for WAV reading and writing."""

import numpy as np
import pytest
from scipy.io import wavfile

from denoiser.audio import Waveform, read_wav, write_wav
from denoiser.errors import IoFailureError, WavFormatError


class TestWavIO:
    """Tests for read_wav and write_wav."""

    def test_float32_round_trip(self, tmp_path, rng):
        """Written samples come back within float32 precision."""
        w = Waveform(rng.uniform(-1, 1, size=3000), 50_000)
        path = write_wav(tmp_path / "out" / "a.wav", w)

        back = read_wav(path)
        assert back.sample_rate_hz == 50_000
        np.testing.assert_allclose(back.samples, w.samples, atol=1e-7)

    def test_pcm16_scaling(self, tmp_path):
        """PCM16 samples are divided by 32768."""
        path = tmp_path / "pcm.wav"
        wavfile.write(path, 44_100, np.array([0, 16384, -32768, 32767], dtype=np.int16))

        back = read_wav(path)
        assert back.sample_rate_hz == 44_100
        np.testing.assert_allclose(back.samples, [0.0, 0.5, -1.0, 32767 / 32768])

    def test_unsupported_format(self, tmp_path):
        path = tmp_path / "pcm32.wav"
        wavfile.write(path, 50_000, np.array([1, 2, 3], dtype=np.int32))
        with pytest.raises(WavFormatError):
            read_wav(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(IoFailureError):
            read_wav(tmp_path / "nope.wav")

    def test_stereo_is_mixed(self, tmp_path):
        """Channels are averaged into mono."""
        path = tmp_path / "stereo.wav"
        data = np.array([[0.2, 0.4], [-1.0, 1.0]], dtype=np.float32)
        wavfile.write(path, 50_000, data)

        np.testing.assert_allclose(read_wav(path).samples, [0.3, 0.0], atol=1e-7)

    def test_stereo_rejected_without_mixing(self, tmp_path):
        path = tmp_path / "stereo.wav"
        wavfile.write(path, 50_000, np.zeros((4, 2), dtype=np.float32))
        with pytest.raises(WavFormatError):
            read_wav(path, mix_to_mono=False)
