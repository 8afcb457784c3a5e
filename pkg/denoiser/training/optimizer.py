"""
Adam optimizer over a dict of named parameter arrays, updated in place.
"""

from dataclasses import dataclass, field

import numpy as np
from numpy.typing import NDArray

from denoiser.errors import ShapeMismatchError


@dataclass
class AdamState:
    """Moment estimates per parameter name and the step counter."""

    lr: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
    t: int = 0
    m: dict[str, NDArray] = field(default_factory=dict)
    v: dict[str, NDArray] = field(default_factory=dict)


def adam_step(
    params: dict[str, NDArray],
    grads: dict[str, NDArray],
    state: AdamState,
) -> tuple[dict[str, NDArray], AdamState]:
    """
    One Adam update.

    theta <- theta - lr * m_hat / (sqrt(v_hat) + eps), with bias-corrected
    moments. Parameter arrays are modified in place and also returned.

    Raises:
        ShapeMismatchError: if a gradient is missing or has the wrong shape
    """
    for name, p in params.items():
        g = grads.get(name)
        if g is None:
            raise ShapeMismatchError(f"no gradient for {name}")
        if g.shape != p.shape:
            raise ShapeMismatchError(f"gradient for {name} has shape {g.shape}, parameter {p.shape}")

    state.t += 1
    bc1 = 1.0 - state.beta1 ** state.t
    bc2 = 1.0 - state.beta2 ** state.t

    for name, p in params.items():
        g = grads[name]
        if name not in state.m:
            state.m[name] = np.zeros_like(p)
            state.v[name] = np.zeros_like(p)

        m = state.m[name]
        v = state.v[name]
        m *= state.beta1
        m += (1.0 - state.beta1) * g
        v *= state.beta2
        v += (1.0 - state.beta2) * (g * g)

        m_hat = m / bc1
        v_hat = v / bc2
        p -= state.lr * m_hat / (np.sqrt(v_hat) + state.epsilon)

    return params, state
