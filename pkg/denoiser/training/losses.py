"""
Reconstruction losses, reduced by the mean over every element.
"""

import numpy as np
from numpy.typing import ArrayLike, NDArray

from denoiser.errors import ShapeMismatchError

BCE_CLAMP = 1e-7


def _pair(target: ArrayLike, prediction: ArrayLike) -> tuple[NDArray, NDArray]:
    y = np.asarray(target, dtype=np.float64)
    p = np.asarray(prediction, dtype=np.float64)
    if y.shape != p.shape:
        raise ShapeMismatchError(f"target shape {y.shape} != prediction shape {p.shape}")
    if y.size == 0:
        raise ShapeMismatchError("loss of an empty array is undefined")
    return y, p


def bce_loss(target: ArrayLike, prediction: ArrayLike) -> float:
    """Binary cross-entropy with predictions clamped to [1e-7, 1 - 1e-7]."""
    y, p = _pair(target, prediction)
    p = np.clip(p, BCE_CLAMP, 1.0 - BCE_CLAMP)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log1p(-p)))


def bce_grad(target: ArrayLike, prediction: ArrayLike) -> NDArray:
    """d(bce_loss)/d(prediction), using the same clamping."""
    y, p = _pair(target, prediction)
    p = np.clip(p, BCE_CLAMP, 1.0 - BCE_CLAMP)
    return (-y / p + (1.0 - y) / (1.0 - p)) / y.size


def mse_loss(target: ArrayLike, prediction: ArrayLike) -> float:
    y, p = _pair(target, prediction)
    return float(np.mean(np.square(y - p)))


def mse_grad(target: ArrayLike, prediction: ArrayLike) -> NDArray:
    y, p = _pair(target, prediction)
    return 2.0 * (p - y) / y.size
