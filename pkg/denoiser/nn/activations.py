"""
Pointwise activations and their derivatives.

Backward functions take the pre-activation input, not the output.
"""

import numpy as np
from numpy.typing import NDArray
from scipy.special import expit

from denoiser.models import ActivationKind


def activation_forward(kind: ActivationKind | str, x: NDArray) -> NDArray:
    kind = ActivationKind(kind)
    if kind == ActivationKind.RELU:
        return np.maximum(x, 0)
    if kind == ActivationKind.SIGMOID:
        return expit(x)
    return x


def activation_backward(kind: ActivationKind | str, x: NDArray, grad_out: NDArray) -> NDArray:
    """
    Chain rule through the activation at pre-activation ``x``.

    relu'(0) is taken as 0.
    """
    kind = ActivationKind(kind)
    if kind == ActivationKind.RELU:
        return grad_out * (x > 0)
    if kind == ActivationKind.SIGMOID:
        s = expit(x)
        return grad_out * s * (1 - s)
    return grad_out
