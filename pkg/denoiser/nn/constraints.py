"""
Max-norm weight constraint.

Each output unit's fan-in weight vector is projected back onto the L2 ball
of radius ``max_norm``. Applied after every optimizer step.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.typing import NDArray

DEFAULT_MAX_NORM = 2.0


def unit_norms(weights: NDArray, unit_axis: Optional[int] = None) -> NDArray:
    """L2 norm of every output unit; the whole array is one unit when unit_axis is None."""
    if unit_axis is None:
        return np.sqrt(np.sum(np.square(weights), keepdims=True))
    axes = tuple(a for a in range(weights.ndim) if a != unit_axis % weights.ndim)
    return np.sqrt(np.sum(np.square(weights), axis=axes, keepdims=True))


def apply_max_norm(
    weights: NDArray,
    max_norm: float = DEFAULT_MAX_NORM,
    unit_axis: Optional[int] = None,
) -> NDArray:
    """Rescale units whose norm exceeds ``max_norm``; others are returned unchanged."""
    if max_norm <= 0:
        raise ValueError("max_norm must be > 0")
    weights = np.asarray(weights)
    norms = unit_norms(weights.astype(np.float64), unit_axis)
    scale = np.ones_like(norms)
    np.divide(max_norm, norms, out=scale, where=norms > max_norm)
    out = (weights * scale).astype(weights.dtype, copy=False)

    # rounding in the weight dtype can leave a unit a few ulps past the limit
    shrink = np.asarray(1.0 - 4 * np.finfo(out.dtype).eps, dtype=out.dtype)
    for _ in range(16):
        over = unit_norms(out, unit_axis) > max_norm
        if not np.any(over):
            break
        out = np.where(over, out * shrink, out)
    return out


@dataclass(frozen=True)
class MaxNormConstraint:
    max_norm: float = DEFAULT_MAX_NORM

    def __post_init__(self):
        if self.max_norm <= 0:
            raise ValueError("max_norm must be > 0")

    def __call__(self, weights: NDArray, unit_axis: Optional[int] = None) -> NDArray:
        return apply_max_norm(weights, self.max_norm, unit_axis)
