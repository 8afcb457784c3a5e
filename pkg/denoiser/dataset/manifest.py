"""
Corpus and paired-corpus manifests.

Entry paths are stored relative to the manifest's own directory so a work
tree can be moved as a whole.
"""

import os
from pathlib import Path

from denoiser.jsonio import read_model, write_json
from denoiser.models import CorpusManifest, PairedManifest


def relative_to_manifest(manifest_path: str | Path, file_path: str | Path) -> str:
    """POSIX-style path of ``file_path`` relative to the manifest directory."""
    base = Path(manifest_path).resolve().parent
    return Path(os.path.relpath(Path(file_path).resolve(), base)).as_posix()


def resolve_entry_path(manifest_path: str | Path, rel: str) -> Path:
    return Path(manifest_path).parent / rel


def save_corpus_manifest(manifest: CorpusManifest, path: str | Path) -> Path:
    return write_json(path, manifest)


def load_corpus_manifest(path: str | Path) -> CorpusManifest:
    return read_model(path, CorpusManifest)


def save_paired_manifest(manifest: PairedManifest, path: str | Path) -> Path:
    """Persist with the noise recipe spelled {"kind", "factor", "seed", "path"}."""
    return write_json(path, manifest)


def load_paired_manifest(path: str | Path) -> PairedManifest:
    return read_model(path, PairedManifest)
