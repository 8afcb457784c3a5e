"""
Neural core: conv layers with hand-written gradients, the autoencoder,
max-norm and checkpoints.
"""

from denoiser.nn.activations import activation_backward, activation_forward
from denoiser.nn.layers import (
    Conv1DLayer,
    Conv1DTransposeLayer,
    conv1d_backward,
    conv1d_forward,
    conv1d_transpose_backward,
    conv1d_transpose_forward,
    conv_geometry,
)
from denoiser.nn.constraints import MaxNormConstraint, apply_max_norm, unit_norms
from denoiser.nn.model import (
    AutoencoderModel,
    ForwardCache,
    constrain_model,
    denoise_array,
    encode,
    init_model,
    model_backward,
    model_forward,
)
from denoiser.nn.checkpoint import epoch_checkpoint_path, load_checkpoint, save_checkpoint

__all__ = [
    "activation_forward",
    "activation_backward",
    "Conv1DLayer",
    "Conv1DTransposeLayer",
    "conv_geometry",
    "conv1d_forward",
    "conv1d_backward",
    "conv1d_transpose_forward",
    "conv1d_transpose_backward",
    "MaxNormConstraint",
    "apply_max_norm",
    "unit_norms",
    "AutoencoderModel",
    "ForwardCache",
    "init_model",
    "model_forward",
    "model_backward",
    "constrain_model",
    "encode",
    "denoise_array",
    "save_checkpoint",
    "load_checkpoint",
    "epoch_checkpoint_path",
]
