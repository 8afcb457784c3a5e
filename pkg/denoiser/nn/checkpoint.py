"""
Checkpoint persistence.

A checkpoint is a JSON manifest plus a sidecar blob of little-endian float32
values. Tensors appear in the blob in manifest order; offsets and lengths
count float32 elements.
"""

from pathlib import Path

import numpy as np
from loguru import logger
from pydantic import ValidationError

from denoiser.errors import CheckpointMismatchError, IoFailureError
from denoiser.jsonio import read_model, write_json
from denoiser.models import CheckpointManifest, CheckpointTensor
from denoiser.nn.model import AutoencoderModel, init_model

BLOB_DTYPE = np.dtype("<f4")


def blob_path(manifest_path: str | Path) -> Path:
    return Path(manifest_path).with_suffix(".bin")


def epoch_checkpoint_path(model_path: str | Path, epoch: int) -> Path:
    """``<stem>.epoch<N>.json`` next to the final checkpoint."""
    model_path = Path(model_path)
    return model_path.with_name(f"{model_path.stem}.epoch{epoch}.json")


def save_checkpoint(model: AutoencoderModel, path: str | Path) -> Path:
    """Write ``path`` (manifest) and its ``.bin`` blob. Returns the manifest path."""
    path = Path(path)
    blob = blob_path(path)

    tensors = []
    chunks = []
    offset = 0
    for name, array in model.parameters().items():
        tensors.append(CheckpointTensor(name=name, shape=list(array.shape), offset=offset, len=array.size))
        chunks.append(np.ascontiguousarray(array, dtype=BLOB_DTYPE).tobytes())
        offset += array.size

    manifest = CheckpointManifest(arch=model.arch, seed=model.seed, blob=blob.name, tensors=tensors)
    try:
        blob.parent.mkdir(parents=True, exist_ok=True)
        blob.write_bytes(b"".join(chunks))
    except OSError as e:
        raise IoFailureError(f"Cannot write {blob}: {e}") from e
    write_json(path, manifest)

    logger.info(f"Saved checkpoint {path} ({offset} parameters)")
    return path


def load_checkpoint(path: str | Path) -> AutoencoderModel:
    """
    Rebuild a model from a checkpoint, validating it against its architecture.

    Raises:
        CheckpointMismatchError: if the checkpoint is missing, unreadable, or
            its tensors do not match the declared architecture
    """
    path = Path(path)
    try:
        manifest = read_model(path, CheckpointManifest)
    except (IoFailureError, ValidationError) as e:
        raise CheckpointMismatchError(f"Cannot load checkpoint {path}: {e}") from e

    model = init_model(manifest.seed, manifest.arch)
    expected = {name: array.shape for name, array in model.parameters().items()}
    found = [t.name for t in manifest.tensors]
    if found != list(expected):
        raise CheckpointMismatchError(
            f"{path}: tensors {found} do not match architecture {list(expected)}"
        )

    blob = path.parent / manifest.blob
    try:
        raw = np.frombuffer(blob.read_bytes(), dtype=BLOB_DTYPE)
    except (OSError, ValueError) as e:
        raise CheckpointMismatchError(f"Cannot read checkpoint blob {blob}: {e}") from e

    params = model.parameters()
    offset = 0
    for tensor in manifest.tensors:
        shape = tuple(tensor.shape)
        if shape != expected[tensor.name] or tensor.len != int(np.prod(shape)):
            raise CheckpointMismatchError(
                f"{path}: {tensor.name} has shape {shape}, architecture needs {expected[tensor.name]}"
            )
        if tensor.offset != offset or tensor.offset + tensor.len > raw.size:
            raise CheckpointMismatchError(f"{path}: {tensor.name} lies outside the blob")
        params[tensor.name][...] = raw[offset:offset + tensor.len].reshape(shape)
        offset += tensor.len

    if offset != raw.size:
        raise CheckpointMismatchError(f"{path}: blob holds {raw.size} values, manifest uses {offset}")

    if not all(np.all(np.isfinite(p)) for p in params.values()):
        raise CheckpointMismatchError(f"{path}: non-finite parameters")

    logger.debug(f"Loaded checkpoint {path}")
    return model
