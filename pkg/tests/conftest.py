"""Shared fixtures and numerical helpers."""

import sys
from pathlib import Path
from typing import Callable

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from loguru import logger

from denoiser.models import Architecture

settings.register_profile(
    "default",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
settings.load_profile("default")


@pytest.fixture(autouse=True)
def reset_logging():
    """Keep loguru writing to the real stderr between tests."""
    yield
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def tiny_arch() -> Architecture:
    """One encoder and one decoder layer, float64."""
    return Architecture(encoder_filters=[2], decoder_filters=[2], dtype="float64")


@pytest.fixture
def desk_arch64() -> Architecture:
    return Architecture(dtype="float64")


def numeric_grad(f: Callable[[], float], x: np.ndarray, h: float = 1e-5) -> np.ndarray:
    """Central finite differences of scalar f() with respect to array x (perturbed in place)."""
    grad = np.zeros_like(x, dtype=np.float64)
    it = np.nditer(x, flags=["multi_index"])
    for _ in it:
        idx = it.multi_index
        orig = x[idx]
        x[idx] = orig + h
        plus = f()
        x[idx] = orig - h
        minus = f()
        x[idx] = orig
        grad[idx] = (plus - minus) / (2 * h)
    return grad


def rel_error(a: np.ndarray, b: np.ndarray) -> float:
    """||a - b|| / max(||a|| + ||b||, tiny)."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    denom = max(np.linalg.norm(a) + np.linalg.norm(b), 1e-12)
    return float(np.linalg.norm(a - b) / denom)


def write_csv(path: Path, rows: list[str]) -> Path:
    """Write raw CSV lines (LF terminated)."""
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("".join(f"{row}\n" for row in rows))
    return path


def sine_rows(n: int, freq: float = 60.0, rate: int = 50_000) -> list[str]:
    """n rows of 8 channels; channel 7 is a sine."""
    t = np.arange(n) / rate
    rows = []
    for i in range(n):
        values = [0.01 * (c + 1) for c in range(7)] + [np.sin(2 * np.pi * freq * t[i])]
        rows.append(",".join(f"{v:.9g}" for v in values))
    return rows
