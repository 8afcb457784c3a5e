"""
Loss-curve export: CSV (epoch,train_loss,val_loss), JSON and a rich table.
"""

from pathlib import Path

import pandas as pd
from rich.table import Table

from denoiser.errors import IoFailureError
from denoiser.jsonio import read_model, write_json
from denoiser.models import LossCurve

CSV_COLUMNS = ["epoch", "train_loss", "val_loss"]


def write_loss_curve_csv(curve: LossCurve, path: str | Path) -> Path:
    """Empty val_loss cells mean there was no validation split."""
    path = Path(path)
    frame = pd.DataFrame([r.model_dump() for r in curve.records], columns=CSV_COLUMNS)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, lineterminator="\n")
    except OSError as e:
        raise IoFailureError(f"Cannot write {path}: {e}") from e
    return path


def write_loss_curve(curve: LossCurve, stem: str | Path) -> tuple[Path, Path]:
    """Write ``<stem>.csv`` and ``<stem>.json``."""
    stem = Path(stem)
    csv_path = write_loss_curve_csv(curve, stem.with_suffix(".csv"))
    json_path = write_json(stem.with_suffix(".json"), curve)
    return csv_path, json_path


def load_loss_curve(path: str | Path) -> LossCurve:
    return read_model(path, LossCurve)


def loss_table(curve: LossCurve) -> Table:
    table = Table(title="Training loss")
    table.add_column("Epoch", justify="right", style="cyan")
    table.add_column("Train", justify="right", style="green")
    table.add_column("Validation", justify="right", style="green")
    for record in curve.records:
        val = f"{record.val_loss:.6f}" if record.val_loss is not None else "[dim]n/a[/dim]"
        table.add_row(str(record.epoch), f"{record.train_loss:.6f}", val)
    return table
