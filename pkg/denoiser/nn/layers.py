"""
1D convolution and transposed convolution with hand-derived gradients.

Tensors are (batch, length, channels). Conv weights are
(kernel, in_channels, out_channels); transposed-conv weights are
(kernel, out_channels, in_channels), so a transposed layer and a conv layer
holding the same array are adjoint linear maps.

Each kernel tap is one strided slice times one matmul, summed in kernel
order so results are reproducible bit for bit.
"""

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from denoiser.errors import ChannelMismatchError, ShapeMismatchError
from denoiser.models import ActivationKind, PaddingMode
from denoiser.nn.activations import activation_backward, activation_forward


def conv_geometry(length: int, kernel_size: int, stride: int, padding: PaddingMode | str) -> tuple[int, int, int]:
    """
    Output length and (left, right) zero padding of a strided convolution.

    ``same`` gives ceil(length / stride) outputs with the extra pad sample,
    if any, on the right.
    """
    if PaddingMode(padding) == PaddingMode.SAME:
        out = math.ceil(length / stride)
        total = max((out - 1) * stride + kernel_size - length, 0)
        left = total // 2
        return out, left, total - left

    if length < kernel_size:
        raise ShapeMismatchError(f"input length {length} shorter than kernel {kernel_size}")
    return (length - kernel_size) // stride + 1, 0, 0


def _validate(weights: NDArray, bias: NDArray, stride: int, out_axis: int, name: str) -> None:
    if weights.ndim != 3:
        raise ShapeMismatchError(f"{name} weights must be 3-D, got shape {weights.shape}")
    bias_len = weights.shape[out_axis]
    if bias.shape != (bias_len,):
        raise ShapeMismatchError(f"{name} bias must have shape ({bias_len},), got {bias.shape}")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    if not (np.all(np.isfinite(weights)) and np.all(np.isfinite(bias))):
        raise ValueError(f"{name} parameters must be finite")


@dataclass(eq=False)
class Conv1DLayer:
    """Strided 1D convolution followed by an activation."""

    weights: NDArray
    bias: NDArray
    stride: int = 1
    padding: PaddingMode = PaddingMode.SAME
    activation: ActivationKind = ActivationKind.NONE

    def __post_init__(self):
        self.padding = PaddingMode(self.padding)
        self.activation = ActivationKind(self.activation)
        _validate(self.weights, self.bias, self.stride, 2, "conv")
        if self.padding == PaddingMode.SAME and self.kernel_size % 2 == 0:
            raise ValueError("same padding needs an odd kernel size")

    @property
    def kernel_size(self) -> int:
        return self.weights.shape[0]

    @property
    def in_channels(self) -> int:
        return self.weights.shape[1]

    @property
    def out_channels(self) -> int:
        return self.weights.shape[2]


@dataclass(eq=False)
class Conv1DTransposeLayer:
    """Fractionally strided convolution: output length is stride * input length."""

    weights: NDArray
    bias: NDArray
    stride: int = 1
    activation: ActivationKind = ActivationKind.NONE

    def __post_init__(self):
        self.activation = ActivationKind(self.activation)
        _validate(self.weights, self.bias, self.stride, 1, "transposed conv")
        if self.kernel_size % 2 == 0:
            raise ValueError("transposed layers need an odd kernel size")

    @property
    def padding(self) -> PaddingMode:
        return PaddingMode.SAME

    @property
    def kernel_size(self) -> int:
        return self.weights.shape[0]

    @property
    def in_channels(self) -> int:
        return self.weights.shape[2]

    @property
    def out_channels(self) -> int:
        return self.weights.shape[1]


def _check_input(x: NDArray, in_channels: int) -> None:
    if x.ndim != 3:
        raise ShapeMismatchError(f"expected (batch, length, channels), got shape {x.shape}")
    if x.shape[2] != in_channels:
        raise ChannelMismatchError(f"layer expects {in_channels} channels, input has {x.shape[2]}")


# ===== Convolution =====

def conv1d_linear(x: NDArray, layer: Conv1DLayer) -> NDArray:
    """Pre-activation output of a conv layer."""
    _check_input(x, layer.in_channels)
    batch, length, _ = x.shape
    w = layer.weights
    out, left, right = conv_geometry(length, layer.kernel_size, layer.stride, layer.padding)

    xp = np.pad(x, ((0, 0), (left, right), (0, 0)))
    span = layer.stride * (out - 1) + 1
    z = np.empty((batch, out, layer.out_channels), dtype=np.result_type(x, w))
    z[...] = layer.bias
    for k in range(layer.kernel_size):
        z += xp[:, k:k + span:layer.stride, :] @ w[k]
    return z


def conv1d_forward(x: NDArray, layer: Conv1DLayer) -> NDArray:
    """
    out[b, t, o] = act(sum_{k,c} w[k, c, o] * x[b, stride*t + k - pad, c] + bias[o])

    Raises:
        ChannelMismatchError: if x has the wrong channel count
    """
    return activation_forward(layer.activation, conv1d_linear(x, layer))


def conv1d_backward(
    x: NDArray,
    layer: Conv1DLayer,
    grad_out: NDArray,
    z: NDArray | None = None,
) -> tuple[NDArray, NDArray, NDArray]:
    """
    Gradients of a conv layer with respect to its input, weights and bias.

    ``z`` is the cached pre-activation; it is recomputed when omitted.

    Returns:
        (grad_x, grad_w, grad_b)
    """
    if z is None:
        z = conv1d_linear(x, layer)
    else:
        _check_input(x, layer.in_channels)
    if grad_out.shape != z.shape:
        raise ShapeMismatchError(f"grad_out shape {grad_out.shape} != output shape {z.shape}")

    gz = activation_backward(layer.activation, z, grad_out)
    batch, length, channels = x.shape
    out = z.shape[1]
    _, left, right = conv_geometry(length, layer.kernel_size, layer.stride, layer.padding)
    span = layer.stride * (out - 1) + 1
    dtype = np.result_type(x, layer.weights, gz)

    xp = np.pad(x, ((0, 0), (left, right), (0, 0)))
    grad_xp = np.zeros(xp.shape, dtype=dtype)
    grad_w = np.empty(layer.weights.shape, dtype=dtype)
    gz_flat = gz.reshape(-1, layer.out_channels)

    for k in range(layer.kernel_size):
        window = xp[:, k:k + span:layer.stride, :]
        grad_w[k] = window.reshape(-1, channels).T @ gz_flat
        grad_xp[:, k:k + span:layer.stride, :] += gz @ layer.weights[k].T

    grad_b = gz.sum(axis=(0, 1))
    return grad_xp[:, left:left + length, :], grad_w, grad_b


# ===== Transposed convolution =====

def conv1d_transpose_linear(x: NDArray, layer: Conv1DTransposeLayer) -> NDArray:
    """Pre-activation output of a transposed conv layer."""
    _check_input(x, layer.in_channels)
    batch, length, _ = x.shape
    w = layer.weights
    out_len = layer.stride * length
    _, left, right = conv_geometry(out_len, layer.kernel_size, layer.stride, PaddingMode.SAME)

    span = layer.stride * (length - 1) + 1
    yp = np.zeros((batch, out_len + left + right, layer.out_channels), dtype=np.result_type(x, w))
    for k in range(layer.kernel_size):
        yp[:, k:k + span:layer.stride, :] += x @ w[k].T
    return yp[:, left:left + out_len, :] + layer.bias


def conv1d_transpose_forward(x: NDArray, layer: Conv1DTransposeLayer) -> NDArray:
    """
    Adjoint of the same-padded strided convolution, plus bias and activation.

    Raises:
        ChannelMismatchError: if x has the wrong channel count
    """
    return activation_forward(layer.activation, conv1d_transpose_linear(x, layer))


def conv1d_transpose_backward(
    x: NDArray,
    layer: Conv1DTransposeLayer,
    grad_out: NDArray,
    z: NDArray | None = None,
) -> tuple[NDArray, NDArray, NDArray]:
    """
    Gradients of a transposed conv layer.

    Returns:
        (grad_x, grad_w, grad_b)
    """
    if z is None:
        z = conv1d_transpose_linear(x, layer)
    else:
        _check_input(x, layer.in_channels)
    if grad_out.shape != z.shape:
        raise ShapeMismatchError(f"grad_out shape {grad_out.shape} != output shape {z.shape}")

    gz = activation_backward(layer.activation, z, grad_out)
    batch, length, channels = x.shape
    out_len = z.shape[1]
    _, left, right = conv_geometry(out_len, layer.kernel_size, layer.stride, PaddingMode.SAME)
    span = layer.stride * (length - 1) + 1
    dtype = np.result_type(x, layer.weights, gz)

    gp = np.pad(gz, ((0, 0), (left, right), (0, 0)))
    grad_x = np.zeros(x.shape, dtype=dtype)
    grad_w = np.empty(layer.weights.shape, dtype=dtype)
    x_flat = x.reshape(-1, channels)

    for k in range(layer.kernel_size):
        window = gp[:, k:k + span:layer.stride, :]
        grad_x += window @ layer.weights[k]
        grad_w[k] = window.reshape(-1, layer.out_channels).T @ x_flat

    grad_b = gz.sum(axis=(0, 1))
    return grad_x, grad_w, grad_b
