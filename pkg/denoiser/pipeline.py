"""
Pipeline stages behind the CLI commands.

Each run_* function performs one stage end to end (reading its inputs,
writing its artifacts) and raises a DenoiserError on failure.

Flow:
    synth / fetch -> prepare (CSV -> clean WAV) -> corrupt (noisy WAV)
    -> train (split, fit, checkpoint) -> evaluate / denoise
"""

import uuid
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from denoiser.audio import (
    NormalizedWaveform,
    Waveform,
    denormalize,
    minmax_normalize,
    read_wav,
    write_wav,
)
from denoiser.config import PipelineConfig
from denoiser.dataset import (
    csv_to_wav,
    fetch_dataset,
    find_recordings,
    infer_category,
    load_corpus_manifest,
    load_paired_manifest,
    load_split,
    relative_to_manifest,
    resolve_entry_path,
    save_corpus_manifest,
    save_paired_manifest,
    save_split,
    split_dataset,
    synth_corpus,
)
from denoiser.errors import (
    BatchFailureError,
    ConstantSignalError,
    DenoiserError,
    EmptyCorpusError,
    EmptyTestSetError,
)
from denoiser.evaluation import ReportMeta, TestSound, emit_comparison_bundle, emit_report, evaluate_testset
from denoiser.logging_config import StageLogger
from denoiser.models import (
    CorpusEntry,
    CorpusManifest,
    DatasetSplit,
    EvalReport,
    LossCurve,
    NoiseKind,
    PairedEntry,
    PairedManifest,
)
from denoiser.nn import (
    AutoencoderModel,
    denoise_array,
    epoch_checkpoint_path,
    init_model,
    load_checkpoint,
    save_checkpoint,
)
from denoiser.noise import corrupt_with_spec, derive_file_seed
from denoiser.training import fit, make_windows, write_loss_curve

LOSS_CURVE_STEM = "loss_curve"


def _run_id() -> str:
    return uuid.uuid4().hex


@dataclass
class TrainResult:
    model: AutoencoderModel
    curve: LossCurve
    split: DatasetSplit


# ===== fetch / synth =====

def run_fetch(url: str, dest: str | Path, checksum: Optional[str] = None) -> list[str]:
    log = StageLogger(_run_id(), "fetch")
    log.info(f"Fetching {url} into {dest}")
    files = fetch_dataset(url, dest, checksum)
    log.info(f"{len(files)} files ready")
    return files


def run_synth(
    out_dir: str | Path,
    count: int = 48,
    seed: int = 0,
    f_min: float = 40.0,
    f_max: float = 70.0,
    duration_s: float = 1.0,
) -> list[Path]:
    """Generate a MAFAULDA-shaped synthetic corpus."""
    return synth_corpus(out_dir, count, seed=seed, f_min=f_min, f_max=f_max, duration_s=duration_s)


# ===== prepare =====

def run_prepare(
    config: PipelineConfig,
    dataset_dir: Optional[Path] = None,
    out_dir: Optional[Path] = None,
) -> CorpusManifest:
    """
    Convert every CSV recording under ``dataset_dir`` into a clean WAV.

    The WAV tree mirrors the CSV tree; ids are the relative paths without
    suffix.

    Raises:
        EmptyCorpusError: if no CSV files are found
        BatchFailureError: if any file failed to convert
    """
    log = StageLogger(_run_id(), "prepare")
    dataset_dir = Path(dataset_dir or config.dataset_dir)
    manifest_path = Path(out_dir) / "manifest.json" if out_dir else config.clean_manifest_path
    out_dir = manifest_path.parent

    recordings = find_recordings(dataset_dir)
    if not recordings:
        raise EmptyCorpusError(f"no input files under {dataset_dir}")

    log.info(f"Converting {len(recordings)} recordings from {dataset_dir}")
    entries = []
    failures = []
    for csv_path in recordings:
        rel = csv_path.relative_to(dataset_dir).with_suffix("")
        wav_path = out_dir / rel.with_suffix(".wav")
        try:
            wave = csv_to_wav(csv_path, wav_path, config.mic_column)
        except DenoiserError as e:
            log.error(f"{csv_path}: {e}")
            failures.append((str(csv_path), str(e)))
            continue
        entries.append(CorpusEntry(
            id=rel.as_posix(),
            category=infer_category(csv_path.relative_to(dataset_dir)),
            path=relative_to_manifest(manifest_path, wav_path),
            num_samples=len(wave),
            sample_rate_hz=wave.sample_rate_hz,
        ))

    if failures:
        raise BatchFailureError("prepare", failures)

    manifest = CorpusManifest(mic_column=config.mic_column, entries=entries)
    save_corpus_manifest(manifest, manifest_path)
    log.info(f"Wrote {len(entries)} WAVs and {manifest_path}")
    return manifest


# ===== corrupt =====

def run_corrupt(
    config: PipelineConfig,
    manifest_path: Optional[Path] = None,
    out_dir: Optional[Path] = None,
) -> PairedManifest:
    """
    Write a noisy twin of every clean WAV.

    Each file's noise seed is derived from (split_seed, noise seed, file id).

    Raises:
        BatchFailureError: if any file failed
    """
    log = StageLogger(_run_id(), "corrupt")
    manifest_path = Path(manifest_path or config.clean_manifest_path)
    paired_path = Path(out_dir) / "manifest.json" if out_dir else config.paired_manifest_path
    out_dir = paired_path.parent
    spec = config.noise

    corpus = load_corpus_manifest(manifest_path)
    log.info(f"Corrupting {len(corpus.entries)} sounds with {spec.kind} noise, factor {spec.noise_factor}")

    entries = []
    failures = []
    for entry in corpus.entries:
        clean_path = resolve_entry_path(manifest_path, entry.path)
        noisy_path = out_dir / f"{entry.id}.wav"
        seed = derive_file_seed(config.split_seed, entry.id, spec.seed)
        try:
            clean = read_wav(clean_path)
            write_wav(noisy_path, corrupt_with_spec(clean, spec, seed))
        except DenoiserError as e:
            log.error(f"{entry.id}: {e}")
            failures.append((entry.id, str(e)))
            continue
        entries.append(PairedEntry(
            id=entry.id,
            category=entry.category,
            clean=relative_to_manifest(paired_path, clean_path),
            noisy=relative_to_manifest(paired_path, noisy_path),
            seed=seed,
        ))

    if failures:
        raise BatchFailureError("corrupt", failures)

    manifest = PairedManifest(noise=spec, split_seed=config.split_seed, entries=entries)
    save_paired_manifest(manifest, paired_path)
    log.info(f"Wrote {len(entries)} noisy WAVs and {paired_path}")
    return manifest


# ===== train / evaluate =====

def load_normalized_pair(
    manifest: PairedManifest,
    manifest_path: Path,
    sound_id: str,
) -> tuple[NormalizedWaveform, NormalizedWaveform]:
    """(noisy, clean), each normalized with its own min and max."""
    entry = manifest.entry(sound_id)
    noisy = read_wav(resolve_entry_path(manifest_path, entry.noisy))
    clean = read_wav(resolve_entry_path(manifest_path, entry.clean))
    return minmax_normalize(noisy), minmax_normalize(clean)


def _windows_for(
    manifest: PairedManifest,
    manifest_path: Path,
    ids: list[str],
    window_len: int,
    log: StageLogger,
) -> list[tuple[np.ndarray, np.ndarray]]:
    pairs = []
    for sound_id in ids:
        try:
            noisy, clean = load_normalized_pair(manifest, manifest_path, sound_id)
        except ConstantSignalError as e:
            log.warning(f"Skipping {sound_id}: {e}")
            continue
        windows = make_windows(noisy, clean, window_len)
        if not windows:
            log.warning(f"{sound_id} is shorter than one {window_len}-sample window")
        pairs.extend(windows)
    return pairs


def run_train(config: PipelineConfig) -> TrainResult:
    """
    Split the paired corpus, train, and write the checkpoint, loss curve and
    split manifest.

    Raises:
        EmptyCorpusError: if the selected category has no sounds
        EmptyTrainSetError: if the train split yields no windows
        NonFiniteLossError: if training diverges
    """
    log = StageLogger(_run_id(), "train")
    manifest_path = config.paired_manifest_path
    manifest = load_paired_manifest(manifest_path)

    ids = manifest.ids(config.category)
    if not ids:
        raise EmptyCorpusError(f"no sounds in category '{config.category}'")

    split = split_dataset(ids, config.split_seed)
    save_split(split, config.split_manifest_path)

    window_len = config.train.window_len
    train_pairs = _windows_for(manifest, manifest_path, split.train, window_len, log)
    val_pairs = _windows_for(manifest, manifest_path, split.val, window_len, log)
    log.info(f"{len(train_pairs)} train and {len(val_pairs)} validation windows")

    def checkpoint_epoch(model: AutoencoderModel, epoch: int) -> None:
        save_checkpoint(model, epoch_checkpoint_path(config.model_path, epoch))

    model = init_model(config.train.seed, config.arch)
    model, curve = fit(
        model,
        train_pairs,
        val_pairs,
        config.train,
        on_epoch=checkpoint_epoch if config.train.checkpoint_every_epoch else None,
    )

    save_checkpoint(model, config.model_path)
    write_loss_curve(curve, config.report_dir / LOSS_CURVE_STEM)
    log.info(f"Training finished: final train loss {curve.records[-1].train_loss:.6f}")
    return TrainResult(model=model, curve=curve, split=split)


def run_evaluate(
    config: PipelineConfig,
    model_path: Optional[Path] = None,
    split_path: Optional[Path] = None,
) -> EvalReport:
    """
    Score the persisted test split and write the report.

    Raises:
        EmptyTestSetError: if the test split is empty
        CheckpointMismatchError: if the checkpoint cannot be used
    """
    log = StageLogger(_run_id(), "evaluate")
    manifest_path = config.paired_manifest_path
    manifest = load_paired_manifest(manifest_path)
    split = load_split(split_path or config.split_manifest_path)
    if not split.test:
        raise EmptyTestSetError("test split is empty")

    model = load_checkpoint(model_path or config.model_path)

    sounds = []
    for sound_id in split.test:
        try:
            noisy, clean = load_normalized_pair(manifest, manifest_path, sound_id)
        except ConstantSignalError as e:
            log.warning(f"Skipping {sound_id}: {e}")
            continue
        sounds.append(TestSound(sound_id, clean, noisy))

    meta = ReportMeta(
        category=config.category,
        noise_kind=NoiseKind(manifest.noise.kind).value,
        window_len=config.train.window_len,
    )
    report = evaluate_testset(model, sounds, meta)
    emit_report(report, config.report_dir)
    return report


# ===== denoise =====

def run_denoise(
    model_path: str | Path,
    in_wav: str | Path,
    out_wav: str | Path,
    window_len: int,
    bundle_dir: Optional[Path] = None,
    clean_wav: Optional[Path] = None,
) -> Waveform:
    """
    Denoise one WAV file and write the result at the input's original scale.

    Raises:
        CheckpointMismatchError: if the checkpoint cannot be used
        IoFailureError: if the input cannot be read or the output written
    """
    log = StageLogger(_run_id(), "denoise")
    model = load_checkpoint(model_path)

    noisy = read_wav(in_wav)
    noisy_norm = minmax_normalize(noisy)
    restored = np.clip(denoise_array(model, noisy_norm.samples, window_len), 0.0, 1.0)
    denoised = denormalize(NormalizedWaveform(restored, noisy.sample_rate_hz, noisy_norm.norm))
    write_wav(out_wav, denoised)
    log.info(f"Denoised {in_wav} -> {out_wav}")

    if bundle_dir:
        if clean_wav:
            clean = read_wav(clean_wav)
        else:
            log.warning("No clean reference given; the bundle uses the input as 'clean'")
            clean = noisy
        emit_comparison_bundle(clean, noisy, denoised, bundle_dir)

    return denoised
