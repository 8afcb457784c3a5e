"""
Command-line interface for the motor-sound denoiser.

stdout carries one machine-parsable summary line per command; logs, tables
and diagnostics go to stderr.

Exit codes:
    0  success
    1  any other denoiser error
    2  invalid configuration or usage
    10 network failure, 11 checksum mismatch, 12 extraction failure (fetch)
    20 prepare failed, 21 corrupt failed
    30 non-finite loss, 31 empty split (train)
    40 checkpoint mismatch, 41 I/O failure (denoise)
    50 empty test split (evaluate)
"""

from pathlib import Path
from typing import Any, Callable, Optional

import click
import orjson
from loguru import logger
from rich.console import Console
from rich.panel import Panel

from denoiser import __version__
from denoiser.config import PipelineConfig, load_config
from denoiser.errors import (
    ChecksumMismatchError,
    CheckpointMismatchError,
    DenoiserError,
    EmptyCorpusError,
    EmptyTestSetError,
    EmptyTrainSetError,
    ExtractionFailureError,
    FetchError,
    IoFailureError,
    NetworkFailureError,
    NonFiniteLossError,
)
from denoiser.logging_config import setup_logging

console = Console(stderr=True)

EXTRA_ARGS = {"ignore_unknown_options": True, "allow_extra_args": True}

EXIT_CODES: dict[str, list[tuple[type[DenoiserError], int]]] = {
    "fetch": [
        (NetworkFailureError, 10),
        (ChecksumMismatchError, 11),
        (ExtractionFailureError, 12),
        (FetchError, 10),
    ],
    "prepare": [(DenoiserError, 20)],
    "corrupt": [(DenoiserError, 21)],
    "train": [
        (NonFiniteLossError, 30),
        (EmptyTrainSetError, 31),
        (EmptyCorpusError, 31),
    ],
    "denoise": [
        (CheckpointMismatchError, 40),
        (DenoiserError, 41),
    ],
    "evaluate": [(EmptyTestSetError, 50)],
}


def parse_overrides(args: list[str]) -> dict[str, Any]:
    """
    Turn ``--train.seed 3`` / ``--noise.kind=blue`` / ``--category all``
    into a dotted-key dict.

    Values are parsed as JSON when possible and kept as strings otherwise.
    """
    overrides: dict[str, Any] = {}
    i = 0
    while i < len(args):
        arg = args[i]
        if not arg.startswith("--") or len(arg) == 2:
            raise click.UsageError(f"Unexpected argument: {arg}")
        if "=" in arg:
            key, raw = arg[2:].split("=", 1)
            i += 1
        else:
            if i + 1 >= len(args):
                raise click.UsageError(f"Option {arg} needs a value")
            key, raw = arg[2:], args[i + 1]
            i += 2
        try:
            overrides[key] = orjson.loads(raw)
        except orjson.JSONDecodeError:
            overrides[key] = raw
    return overrides


def _load(ctx: click.Context, **options: Any) -> PipelineConfig:
    """Build the run configuration and set up logging.

    ``options`` are command-specific overrides; None values are ignored.
    """
    opts = ctx.obj
    overrides = parse_overrides(ctx.args)
    overrides.update({k: v for k, v in options.items() if v is not None})
    if opts["full_scale"]:
        overrides["full_scale"] = True
    try:
        config = load_config(opts["config_path"], opts["seed"], overrides)
    except (ValueError, IoFailureError) as e:
        raise click.UsageError(f"Invalid configuration: {e}")

    errors = config.validate()
    if errors:
        raise click.UsageError("Invalid configuration: " + "; ".join(errors))

    setup_logging(config, opts["verbose"])
    return config


def _run(ctx: click.Context, command: str, action: Callable[[], Any]) -> Any:
    """Run a stage, mapping denoiser errors onto the command's exit codes."""
    try:
        return action()
    except DenoiserError as e:
        code = next((c for cls, c in EXIT_CODES.get(command, []) if isinstance(e, cls)), 1)
        logger.error(f"{command} failed: {e}")
        console.print(f"[red]✗ {command} failed ({type(e).__name__}): {e}[/red]")
        ctx.exit(code)


@click.group()
@click.version_option(version=__version__, prog_name="motor-denoise")
@click.option("--config", "-c", "config_path", type=click.Path(exists=True, dir_okay=False), help="JSON configuration file")
@click.option("--seed", type=int, default=None, help="Seed for splitting, noise and training")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging")
@click.option("--full-scale", is_flag=True, help="128/32/16/8 network with 16384-sample windows")
@click.pass_context
def cli(ctx, config_path, seed, verbose, full_scale):
    """Motor-sound denoising autoencoder toolkit.

    Any configuration field can be overridden after the command name with
    its dotted name, e.g. ``train --train.epochs 3 --noise.kind=blue``.
    """
    ctx.ensure_object(dict)
    ctx.obj.update(config_path=config_path, seed=seed, verbose=verbose, full_scale=full_scale)


@cli.command(context_settings=EXTRA_ARGS)
@click.argument("url")
@click.argument("dest", type=click.Path(file_okay=False))
@click.option("--checksum", default=None, help="Expected SHA-256 of the archive")
@click.pass_context
def fetch(ctx, url, dest, checksum):
    """Download and extract the dataset archive."""
    _load(ctx)
    from denoiser.pipeline import run_fetch

    files = _run(ctx, "fetch", lambda: run_fetch(url, dest, checksum))
    click.echo(f"{len(files)} {dest}")


@cli.command(context_settings=EXTRA_ARGS)
@click.option("--dataset-dir", type=click.Path(exists=True, file_okay=False), default=None)
@click.option("--out-dir", type=click.Path(file_okay=False), default=None)
@click.option("--mic-column", type=int, default=None, help="Microphone column (default 7)")
@click.pass_context
def prepare(ctx, dataset_dir, out_dir, mic_column):
    """Convert MAFAULDA CSV recordings into clean WAVs plus a manifest."""
    config = _load(ctx, mic_column=mic_column)
    from denoiser.pipeline import run_prepare

    manifest = _run(ctx, "prepare", lambda: run_prepare(
        config,
        Path(dataset_dir) if dataset_dir else None,
        Path(out_dir) if out_dir else None,
    ))
    target = Path(out_dir) / "manifest.json" if out_dir else config.clean_manifest_path
    click.echo(f"{len(manifest.entries)} {target}")


@cli.command(context_settings=EXTRA_ARGS)
@click.option("--manifest", "manifest_path", type=click.Path(dir_okay=False), default=None)
@click.option("--out-dir", type=click.Path(file_okay=False), default=None)
@click.pass_context
def corrupt(ctx, manifest_path, out_dir):
    """Write a noisy twin of every clean WAV."""
    config = _load(ctx)
    from denoiser.pipeline import run_corrupt

    manifest = _run(ctx, "corrupt", lambda: run_corrupt(
        config,
        Path(manifest_path) if manifest_path else None,
        Path(out_dir) if out_dir else None,
    ))
    target = Path(out_dir) / "manifest.json" if out_dir else config.paired_manifest_path
    click.echo(f"{len(manifest.entries)} {target}")


@cli.command(context_settings=EXTRA_ARGS)
@click.pass_context
def train(ctx):
    """Split the paired corpus and train the autoencoder."""
    config = _load(ctx)
    from denoiser.pipeline import run_train
    from denoiser.training import loss_table

    console.print(Panel.fit(
        f"[bold blue]Training[/bold blue] {config.category} | "
        f"{config.train.epochs} epochs | window {config.train.window_len} | seed {config.train.seed}",
        title=f"motor-denoise v{__version__}",
    ))
    result = _run(ctx, "train", lambda: run_train(config))
    console.print(loss_table(result.curve))

    last = result.curve.records[-1]
    val = f"{last.val_loss:.6f}" if last.val_loss is not None else "nan"
    click.echo(f"{last.epoch} {last.train_loss:.6f} {val} {config.model_path}")


@cli.command(context_settings=EXTRA_ARGS)
@click.argument("in_wav", type=click.Path(dir_okay=False))
@click.argument("out_wav", type=click.Path(dir_okay=False))
@click.option("--model", "model_path", type=click.Path(dir_okay=False), default=None, help="Checkpoint manifest")
@click.option("--bundle", "bundle_dir", type=click.Path(file_okay=False), default=None, help="Write the comparison bundle here")
@click.option("--clean", "clean_wav", type=click.Path(dir_okay=False), default=None, help="Clean reference for the bundle")
@click.pass_context
def denoise(ctx, in_wav, out_wav, model_path, bundle_dir, clean_wav):
    """Denoise one WAV file."""
    config = _load(ctx)
    from denoiser.pipeline import run_denoise

    denoised = _run(ctx, "denoise", lambda: run_denoise(
        Path(model_path) if model_path else config.model_path,
        in_wav,
        out_wav,
        config.train.window_len,
        Path(bundle_dir) if bundle_dir else None,
        Path(clean_wav) if clean_wav else None,
    ))
    click.echo(f"{len(denoised)} {out_wav}")


@cli.command(context_settings=EXTRA_ARGS)
@click.option("--model", "model_path", type=click.Path(dir_okay=False), default=None, help="Checkpoint manifest")
@click.option("--split", "split_path", type=click.Path(dir_okay=False), default=None, help="Split manifest")
@click.pass_context
def evaluate(ctx, model_path, split_path):
    """Score the test split and write the report."""
    config = _load(ctx)
    from denoiser.evaluation import render_summary, report_table
    from denoiser.pipeline import run_evaluate

    report = _run(ctx, "evaluate", lambda: run_evaluate(
        config,
        Path(model_path) if model_path else None,
        Path(split_path) if split_path else None,
    ))
    console.print(report_table(report))
    console.print(render_summary(report))
    click.echo(report.summary_line())


@cli.command(context_settings=EXTRA_ARGS)
@click.argument("out_dir", type=click.Path(file_okay=False))
@click.option("--count", type=int, default=48, show_default=True)
@click.option("--f-min", type=float, default=40.0, show_default=True, help="Lowest fundamental (Hz)")
@click.option("--f-max", type=float, default=70.0, show_default=True, help="Highest fundamental (Hz)")
@click.option("--duration", type=float, default=1.0, show_default=True, help="Seconds per recording")
@click.pass_context
def synth(ctx, out_dir, count, f_min, f_max, duration):
    """Generate a synthetic MAFAULDA-shaped corpus of motor-like sounds."""
    config = _load(ctx)
    from denoiser.pipeline import run_synth

    seed = ctx.obj["seed"] if ctx.obj["seed"] is not None else config.split_seed
    try:
        paths = _run(ctx, "synth", lambda: run_synth(out_dir, count, seed, f_min, f_max, duration))
    except ValueError as e:
        raise click.UsageError(str(e))
    click.echo(f"{len(paths)} {out_dir}")


def main(argv: Optional[list[str]] = None):
    """Main entry point."""
    cli(args=argv, prog_name="motor-denoise")


if __name__ == "__main__":
    main()
