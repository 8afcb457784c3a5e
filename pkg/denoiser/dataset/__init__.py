"""
Dataset ingestion: MAFAULDA CSVs, deterministic splits, synthetic motor
sounds, manifests and the archive download client.
"""

from denoiser.dataset.mafaulda import (
    DEFAULT_MIC_COLUMN,
    FULL_LENGTH,
    NUM_CHANNELS,
    SAMPLE_RATE_HZ,
    MafauldaRecord,
    csv_to_wav,
    extract_microphone,
    find_recordings,
    infer_category,
    parse_csv,
)
from denoiser.dataset.split import load_split, save_split, split_counts, split_dataset
from denoiser.dataset.synth import synth_corpus, synth_motor_sound, write_synthetic_recording
from denoiser.dataset.fetch import extract_archive, fetch_dataset, fetch_dataset_async
from denoiser.dataset.manifest import (
    load_corpus_manifest,
    load_paired_manifest,
    relative_to_manifest,
    resolve_entry_path,
    save_corpus_manifest,
    save_paired_manifest,
)

__all__ = [
    "DEFAULT_MIC_COLUMN",
    "FULL_LENGTH",
    "NUM_CHANNELS",
    "SAMPLE_RATE_HZ",
    "MafauldaRecord",
    "parse_csv",
    "extract_microphone",
    "csv_to_wav",
    "find_recordings",
    "infer_category",
    "split_counts",
    "split_dataset",
    "save_split",
    "load_split",
    "synth_motor_sound",
    "synth_corpus",
    "write_synthetic_recording",
    "fetch_dataset",
    "fetch_dataset_async",
    "extract_archive",
    "save_corpus_manifest",
    "load_corpus_manifest",
    "save_paired_manifest",
    "load_paired_manifest",
    "relative_to_manifest",
    "resolve_entry_path",
]
