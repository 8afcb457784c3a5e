"""
Deterministic train/validation/test splitting.

Rule: test = ceil(0.30 N); val = round(0.20 (N - test)); train = the rest.
With N = 49 this gives 27/7/15 and with N = 197 it gives 110/27/60.
"""

from pathlib import Path

import numpy as np
from loguru import logger

from denoiser.errors import EmptyCorpusError
from denoiser.jsonio import read_model, write_json
from denoiser.models import DatasetSplit


def split_counts(n: int) -> tuple[int, int, int]:
    """(train, val, test) sizes for a corpus of n sounds."""
    test = (3 * n + 9) // 10
    remaining = n - test
    # 2*remaining/10 is never exactly x.5, so this is round-to-nearest
    val = (2 * remaining + 5) // 10
    return remaining - val, val, test


def split_dataset(ids: list[str], seed: int) -> DatasetSplit:
    """
    Shuffle ``ids`` with ``seed`` and partition them.

    Raises:
        EmptyCorpusError: if ids is empty
        ValueError: if ids contains duplicates
    """
    if not ids:
        raise EmptyCorpusError("cannot split an empty corpus")
    if len(set(ids)) != len(ids):
        raise ValueError("sound identifiers must be unique")

    order = np.random.default_rng(seed).permutation(len(ids))
    shuffled = [ids[i] for i in order]
    n_train, n_val, n_test = split_counts(len(ids))

    split = DatasetSplit(
        seed=seed,
        test=shuffled[:n_test],
        val=shuffled[n_test:n_test + n_val],
        train=shuffled[n_test + n_val:],
    )
    logger.info(f"Split {len(ids)} sounds: train={n_train} val={n_val} test={n_test} (seed {seed})")
    return split


def save_split(split: DatasetSplit, path: str | Path) -> Path:
    """Persist as {"seed", "train", "val", "test"}."""
    return write_json(path, split)


def load_split(path: str | Path) -> DatasetSplit:
    return read_model(path, DatasetSplit)
