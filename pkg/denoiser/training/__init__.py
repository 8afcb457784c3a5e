"""
Losses, the Adam optimizer and the training loop.
"""

from denoiser.training.losses import BCE_CLAMP, bce_grad, bce_loss, mse_grad, mse_loss
from denoiser.training.optimizer import AdamState, adam_step
from denoiser.training.trainer import dataset_loss, fit, make_windows
from denoiser.training.curves import load_loss_curve, loss_table, write_loss_curve, write_loss_curve_csv

__all__ = [
    "BCE_CLAMP",
    "bce_loss",
    "bce_grad",
    "mse_loss",
    "mse_grad",
    "AdamState",
    "adam_step",
    "fit",
    "make_windows",
    "dataset_loss",
    "write_loss_curve",
    "write_loss_curve_csv",
    "load_loss_curve",
    "loss_table",
]
