"""
Evaluation: per-sound MSE, reports and comparison bundles.
"""

from denoiser.evaluation.metrics import baseline_mse, per_sound_mse
from denoiser.evaluation.report import (
    REPORT_CSV,
    REPORT_JSON,
    ReportMeta,
    TestSound,
    emit_report,
    evaluate_testset,
    load_report,
    render_summary,
    report_table,
)
from denoiser.evaluation.bundle import BUNDLE_NAMES, emit_comparison_bundle

__all__ = [
    "per_sound_mse",
    "baseline_mse",
    "TestSound",
    "ReportMeta",
    "evaluate_testset",
    "emit_report",
    "load_report",
    "render_summary",
    "report_table",
    "REPORT_JSON",
    "REPORT_CSV",
    "BUNDLE_NAMES",
    "emit_comparison_bundle",
]
