"""
The convolutional denoising autoencoder.

Encoder: stride-2 conv layers with ReLU. Decoder: stride-2 transposed conv
layers with ReLU. Head: stride-1 conv down to one channel with a sigmoid.
The whole network downsamples by stride ** len(encoder), so inputs must
have a length divisible by that factor (16 for four layers).
"""

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from denoiser.errors import LengthNotDivisibleError, ShapeMismatchError, StaleCacheError
from denoiser.models import Architecture, PaddingMode
from denoiser.nn.activations import activation_forward
from denoiser.nn.constraints import MaxNormConstraint
from denoiser.nn.layers import (
    Conv1DLayer,
    Conv1DTransposeLayer,
    conv1d_backward,
    conv1d_linear,
    conv1d_transpose_backward,
    conv1d_transpose_linear,
)

Layer = Conv1DLayer | Conv1DTransposeLayer

INFERENCE_BATCH = 8


@dataclass(eq=False)
class AutoencoderModel:
    """
    Ordered layers plus the architecture they were built from.

    ``version`` increases whenever parameters change; forward caches remember
    the version they were computed at.
    """

    arch: Architecture
    encoder: list[Conv1DLayer]
    decoder: list[Conv1DTransposeLayer]
    head: Conv1DLayer
    seed: int = 0
    version: int = 0

    def named_layers(self) -> Iterator[tuple[str, Layer]]:
        for i, layer in enumerate(self.encoder):
            yield f"encoder.{i}", layer
        for i, layer in enumerate(self.decoder):
            yield f"decoder.{i}", layer
        yield "head", self.head

    def parameters(self) -> dict[str, NDArray]:
        """Live parameter arrays keyed by ``<layer>.weights`` / ``<layer>.bias``."""
        params = {}
        for name, layer in self.named_layers():
            params[f"{name}.weights"] = layer.weights
            params[f"{name}.bias"] = layer.bias
        return params

    def mark_updated(self) -> None:
        self.version += 1

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(self.arch.dtype)

    @property
    def downsampling_factor(self) -> int:
        return self.arch.downsampling_factor

    @property
    def num_parameters(self) -> int:
        return sum(p.size for p in self.parameters().values())


@dataclass
class ForwardCache:
    """Per-layer (input, pre-activation) pairs from one forward pass."""

    version: int
    steps: list[tuple[NDArray, NDArray]] = field(default_factory=list)


def _glorot(rng: np.random.Generator, shape: tuple[int, int, int], dtype: np.dtype) -> NDArray:
    kernel, a, b = shape
    limit = math.sqrt(6.0 / (kernel * a + kernel * b))
    return rng.uniform(-limit, limit, size=shape).astype(dtype)


def init_model(seed: int, arch: Architecture | None = None) -> AutoencoderModel:
    """Glorot-uniform weights and zero biases, deterministic per seed."""
    arch = arch or Architecture.desk()
    rng = np.random.default_rng(seed)
    dtype = np.dtype(arch.dtype)
    k = arch.kernel_size

    encoder = []
    channels = 1
    for filters in arch.encoder_filters:
        encoder.append(Conv1DLayer(
            weights=_glorot(rng, (k, channels, filters), dtype),
            bias=np.zeros(filters, dtype=dtype),
            stride=arch.stride,
            padding=PaddingMode.SAME,
            activation=arch.hidden_activation,
        ))
        channels = filters

    decoder = []
    for filters in arch.decoder_filters:
        decoder.append(Conv1DTransposeLayer(
            weights=_glorot(rng, (k, filters, channels), dtype),
            bias=np.zeros(filters, dtype=dtype),
            stride=arch.stride,
            activation=arch.hidden_activation,
        ))
        channels = filters

    head = Conv1DLayer(
        weights=_glorot(rng, (k, channels, 1), dtype),
        bias=np.zeros(1, dtype=dtype),
        stride=1,
        padding=PaddingMode.SAME,
        activation=arch.head_activation,
    )

    model = AutoencoderModel(arch=arch, encoder=encoder, decoder=decoder, head=head, seed=seed)
    logger.debug(f"Initialised autoencoder with {model.num_parameters} parameters (seed {seed})")
    return model


def _linear(x: NDArray, layer: Layer) -> NDArray:
    if isinstance(layer, Conv1DTransposeLayer):
        return conv1d_transpose_linear(x, layer)
    return conv1d_linear(x, layer)


def model_forward(model: AutoencoderModel, x: NDArray) -> tuple[NDArray, ForwardCache]:
    """
    Run the autoencoder on a (batch, length, 1) tensor.

    Raises:
        ShapeMismatchError: if x is not (batch, length, 1)
        LengthNotDivisibleError: if length is not a multiple of the downsampling factor
    """
    if x.ndim != 3 or x.shape[2] != 1:
        raise ShapeMismatchError(f"expected (batch, length, 1), got {x.shape}")
    factor = model.downsampling_factor
    if x.shape[1] % factor:
        raise LengthNotDivisibleError(f"input length {x.shape[1]} is not divisible by {factor}")

    cache = ForwardCache(version=model.version)
    h = np.asarray(x, dtype=model.dtype)
    for _, layer in model.named_layers():
        z = _linear(h, layer)
        cache.steps.append((h, z))
        h = activation_forward(layer.activation, z)
    return h, cache


def model_backward(model: AutoencoderModel, cache: ForwardCache, grad_output: NDArray) -> dict[str, NDArray]:
    """
    Gradients for every parameter, keyed like ``model.parameters()``.

    Raises:
        StaleCacheError: if parameters changed since the forward pass
    """
    if cache.version != model.version:
        raise StaleCacheError(
            f"cache from version {cache.version}, model is at version {model.version}"
        )

    layers = list(model.named_layers())
    grads: dict[str, NDArray] = {}
    grad = grad_output
    for (name, layer), (x, z) in zip(reversed(layers), reversed(cache.steps)):
        if isinstance(layer, Conv1DTransposeLayer):
            grad, gw, gb = conv1d_transpose_backward(x, layer, grad, z)
        else:
            grad, gw, gb = conv1d_backward(x, layer, grad, z)
        grads[f"{name}.weights"] = gw
        grads[f"{name}.bias"] = gb
    return {key: grads[key] for key in model.parameters()}


def constrain_model(model: AutoencoderModel, max_norm: float) -> None:
    """Apply max-norm to every layer in place (conv units on axis 2, transposed on axis 1)."""
    constraint = MaxNormConstraint(max_norm)
    for _, layer in model.named_layers():
        axis = 1 if isinstance(layer, Conv1DTransposeLayer) else 2
        layer.weights[...] = constraint(layer.weights, unit_axis=axis)
    model.mark_updated()


def encode(model: AutoencoderModel, x: NDArray) -> NDArray:
    """Bottleneck activations for a (batch, length, 1) tensor."""
    h = np.asarray(x, dtype=model.dtype)
    for layer in model.encoder:
        h = activation_forward(layer.activation, conv1d_linear(h, layer))
    return h


def denoise_array(model: AutoencoderModel, samples: NDArray, window_len: int) -> NDArray:
    """
    Denoise a whole normalized signal.

    The signal is zero-padded to a multiple of the downsampling factor, cut
    into consecutive windows of ``window_len`` (the last may be shorter),
    run through the model and stitched back without overlap, then trimmed.
    """
    samples = np.asarray(samples, dtype=np.float64).reshape(-1)
    n = samples.size
    factor = model.downsampling_factor
    if window_len % factor:
        raise LengthNotDivisibleError(f"window length {window_len} is not divisible by {factor}")

    padded_len = -(-n // factor) * factor
    padded = np.zeros(padded_len)
    padded[:n] = samples

    full = padded_len // window_len
    pieces = []
    if full:
        windows = padded[:full * window_len].reshape(full, window_len, 1)
        for start in range(0, full, INFERENCE_BATCH):
            out, _ = model_forward(model, windows[start:start + INFERENCE_BATCH])
            pieces.append(out.reshape(-1))
    tail = padded[full * window_len:]
    if tail.size:
        out, _ = model_forward(model, tail.reshape(1, -1, 1))
        pieces.append(out.reshape(-1))

    return np.concatenate(pieces).astype(np.float64)[:n]
