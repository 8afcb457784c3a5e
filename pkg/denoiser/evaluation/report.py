"""
Test-set evaluation and report output.

Reports are written as eval_report.json (versioned) and eval_report.csv
with one row per sound in test-split order.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import pandas as pd
from loguru import logger
from rich.table import Table

from denoiser.audio import NormalizedWaveform
from denoiser.errors import EmptyTestSetError, IoFailureError
from denoiser.jsonio import read_model, write_json
from denoiser.models import EvalEntry, EvalReport
from denoiser.nn import AutoencoderModel, denoise_array
from denoiser.evaluation.metrics import baseline_mse, per_sound_mse

REPORT_JSON = "eval_report.json"
REPORT_CSV = "eval_report.csv"
CSV_COLUMNS = ["sound_id", "mse_denoised", "mse_noisy_baseline", "improvement_ratio"]


@dataclass(frozen=True)
class TestSound:
    """A normalized clean/noisy pair from the test split."""

    __test__ = False

    sound_id: str
    clean: NormalizedWaveform
    noisy: NormalizedWaveform


@dataclass(frozen=True)
class ReportMeta:
    category: str
    noise_kind: str
    window_len: int


def evaluate_testset(
    model: AutoencoderModel,
    test_sounds: Sequence[TestSound],
    meta: ReportMeta,
) -> EvalReport:
    """
    Denoise every test sound with windowed inference and score it.

    Raises:
        EmptyTestSetError: if test_sounds is empty
    """
    if not test_sounds:
        raise EmptyTestSetError("test split is empty")

    entries = []
    for sound in test_sounds:
        denoised = denoise_array(model, sound.noisy.samples, meta.window_len)
        entry = EvalEntry.build(
            sound.sound_id,
            per_sound_mse(sound.clean, denoised),
            baseline_mse(sound.clean, sound.noisy),
        )
        logger.debug(
            f"{sound.sound_id}: mse={entry.mse_denoised:.6f} "
            f"baseline={entry.mse_noisy_baseline:.6f} ratio={entry.improvement_ratio:.3f}"
        )
        entries.append(entry)

    report = EvalReport.from_entries(entries, meta.category, meta.noise_kind)
    logger.info(f"Evaluated {len(entries)} sounds: median MSE {report.summary.median:.6f}")
    return report


def emit_report(report: EvalReport, out_dir: str | Path) -> tuple[Path, Path]:
    """Write the JSON and CSV forms of a report into ``out_dir``."""
    out_dir = Path(out_dir)
    json_path = write_json(out_dir / REPORT_JSON, report)

    csv_path = out_dir / REPORT_CSV
    frame = pd.DataFrame([e.model_dump() for e in report.entries], columns=CSV_COLUMNS)
    try:
        frame.to_csv(csv_path, index=False, lineterminator="\n")
    except OSError as e:
        raise IoFailureError(f"Cannot write {csv_path}: {e}") from e

    logger.info(f"Report written to {json_path} and {csv_path}")
    return json_path, csv_path


def load_report(path: str | Path) -> EvalReport:
    return read_model(path, EvalReport)


def render_summary(report: EvalReport) -> str:
    """Human-readable summary."""
    s = report.summary
    lines = []

    lines.append(f"Denoising report - {report.category} / {report.noise_kind}")
    lines.append(f"  Sounds evaluated: {len(report.entries)}")
    lines.append("")
    lines.append("MSE (denoised)")
    lines.append(f"  min {s.min:.6f}  median {s.median:.6f}  mean {s.mean:.6f}  max {s.max:.6f}")
    lines.append(f"  median improvement over noisy input: {report.median_improvement:.3f}x")

    worse = [e for e in report.entries if e.improvement_ratio < 1.0]
    if worse:
        lines.append("")
        lines.append(f"Sounds made worse ({len(worse)})")
        for entry in worse[:10]:
            lines.append(f"  {entry.sound_id}: ratio {entry.improvement_ratio:.3f}")
        if len(worse) > 10:
            lines.append(f"  ... and {len(worse) - 10} more")

    return "\n".join(lines)


def report_table(report: EvalReport) -> Table:
    table = Table(title=f"Per-sound MSE ({report.category}, {report.noise_kind})")
    table.add_column("Sound", style="cyan")
    table.add_column("Denoised", justify="right")
    table.add_column("Noisy", justify="right")
    table.add_column("Ratio", justify="right")
    for e in report.entries:
        color = "green" if e.improvement_ratio >= 1.0 else "red"
        table.add_row(
            e.sound_id,
            f"{e.mse_denoised:.6f}",
            f"{e.mse_noisy_baseline:.6f}",
            f"[{color}]{e.improvement_ratio:.3f}[/{color}]",
        )
    return table
