"""Tests for metrics, reports and comparison bundles."""

import numpy as np
import pandas as pd
import pytest

from denoiser.audio import NormalizedWaveform, NormParams, Waveform, read_wav
from denoiser.errors import EmptyTestSetError, LengthMismatchError
from denoiser.evaluation import (
    REPORT_CSV,
    REPORT_JSON,
    ReportMeta,
    TestSound,
    baseline_mse,
    emit_comparison_bundle,
    emit_report,
    evaluate_testset,
    load_report,
    per_sound_mse,
    render_summary,
    report_table,
)
from denoiser.models import EvalEntry, EvalReport
from denoiser.nn import init_model

META = ReportMeta(category="normal", noise_kind="gaussian", window_len=64)


def _norm(samples) -> NormalizedWaveform:
    return NormalizedWaveform(samples, 50_000, NormParams(0.0, 1.0))


def _sounds(rng, count: int = 3, length: int = 100) -> list[TestSound]:
    sounds = []
    for i in range(count):
        clean = 0.5 + 0.4 * np.sin(np.arange(length) / 5 + i)
        noisy = np.clip(clean + 0.05 * rng.normal(size=length), 0, 1)
        sounds.append(TestSound(f"normal/{i:04d}", _norm(clean), _norm(noisy)))
    return sounds


class TestMetrics:
    """Tests for per_sound_mse."""

    def test_examples(self):
        assert per_sound_mse([0.0, 1.0], [0.0, 0.0]) == 0.5
        assert per_sound_mse(_norm([0.2, 0.4]), _norm([0.2, 0.4])) == 0.0

    def test_length_mismatch(self):
        with pytest.raises(LengthMismatchError):
            per_sound_mse([0.0, 1.0], [0.0])

    def test_baseline(self):
        assert baseline_mse(_norm([0.0, 0.5]), _norm([0.5, 0.5])) == pytest.approx(0.125)


class TestReportModel:
    """Tests for EvalEntry and EvalReport."""

    def test_improvement_ratio(self):
        assert EvalEntry.build("a", 0.01, 0.04).improvement_ratio == pytest.approx(4.0)

    def test_zero_error_ratio_is_finite(self):
        assert np.isfinite(EvalEntry.build("a", 0.0, 0.04).improvement_ratio)

    def test_summary(self):
        entries = [EvalEntry.build(s, v, 0.5) for s, v in (("a", 0.1), ("b", 0.3), ("c", 0.2))]
        report = EvalReport.from_entries(entries, "normal", "blue")

        assert report.summary.min == 0.1
        assert report.summary.max == 0.3
        assert report.summary.mean == pytest.approx(0.2)
        assert report.summary.median == 0.2
        assert report.summary_line().split()[:3] == ["normal", "blue", "3"]

    def test_empty_report(self):
        with pytest.raises(ValueError):
            EvalReport.from_entries([], "normal", "blue")


class TestEvaluateTestset:
    """Tests for evaluate_testset and report output."""

    def test_scores_every_sound_in_order(self, rng):
        sounds = _sounds(rng)
        report = evaluate_testset(init_model(0), sounds, META)

        assert [e.sound_id for e in report.entries] == [s.sound_id for s in sounds]
        for entry, sound in zip(report.entries, sounds):
            assert entry.mse_noisy_baseline == pytest.approx(baseline_mse(sound.clean, sound.noisy))
            assert 0.0 <= entry.mse_denoised <= 1.0
        assert report.category == "normal"
        assert report.noise_kind == "gaussian"

    def test_empty(self):
        with pytest.raises(EmptyTestSetError):
            evaluate_testset(init_model(0), [], META)

    def test_emit_and_load(self, tmp_path, rng):
        report = evaluate_testset(init_model(0), _sounds(rng), META)
        json_path, csv_path = emit_report(report, tmp_path / "reports")

        assert json_path.name == REPORT_JSON
        assert csv_path.name == REPORT_CSV
        assert load_report(json_path) == report

        frame = pd.read_csv(csv_path)
        assert list(frame.columns) == ["sound_id", "mse_denoised", "mse_noisy_baseline", "improvement_ratio"]
        assert list(frame["sound_id"]) == [e.sound_id for e in report.entries]

    def test_render(self):
        entries = [EvalEntry.build("good", 0.01, 0.04), EvalEntry.build("bad", 0.08, 0.04)]
        report = EvalReport.from_entries(entries, "normal", "blue")
        text = render_summary(report)

        assert "normal / blue" in text
        assert "Sounds made worse (1)" in text
        assert "bad: ratio 0.500" in text
        assert report_table(report).row_count == 2


class TestComparisonBundle:
    """Tests for emit_comparison_bundle."""

    def test_nine_files(self, tmp_path, rng):
        waves = [Waveform(rng.normal(size=4096), 50_000) for _ in range(3)]
        written = emit_comparison_bundle(*waves, tmp_path / "bundle")

        names = sorted(p.name for p in written)
        assert names == sorted(
            f"{n}{suffix}"
            for n in ("clean", "noisy", "denoised")
            for suffix in (".wav", "_spectrogram.csv", "_spectrogram.pgm")
        )
        assert all(p.is_file() for p in written)
        assert len(read_wav(tmp_path / "bundle" / "denoised.wav")) == 4096

        spec = np.loadtxt(tmp_path / "bundle" / "clean_spectrogram.csv", delimiter=",")
        assert spec.shape == (7, 513)

    def test_short_signal_shrinks_window(self, tmp_path, rng):
        """A 300-sample signal uses a 256-sample window."""
        waves = [Waveform(rng.normal(size=300), 50_000) for _ in range(3)]
        emit_comparison_bundle(*waves, tmp_path)

        header = (tmp_path / "noisy_spectrogram.pgm").read_bytes()[:12]
        assert header == b"P5\n1 129\n255"

    def test_length_mismatch(self, tmp_path):
        with pytest.raises(LengthMismatchError):
            emit_comparison_bundle(
                Waveform(np.ones(10), 50_000),
                Waveform(np.ones(10), 50_000),
                Waveform(np.ones(11), 50_000),
                tmp_path,
            )
