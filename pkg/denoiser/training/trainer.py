"""
Seeded minibatch training loop.

Each step: forward, BCE, backward, Adam, max-norm. One LossRecord is kept
per epoch with the sample-weighted mean train loss and a full pass over the
validation pairs.
"""

import math
from typing import Callable, Optional, Sequence

import numpy as np
from loguru import logger
from numpy.typing import NDArray

from denoiser.audio import NormalizedWaveform
from denoiser.errors import EmptyTrainSetError, NonFiniteLossError, ShapeMismatchError
from denoiser.models import LossCurve, TrainConfig
from denoiser.nn import AutoencoderModel, constrain_model, model_backward, model_forward
from denoiser.training.losses import bce_grad, bce_loss
from denoiser.training.optimizer import AdamState, adam_step

Pair = tuple[NDArray, NDArray]
StepCallback = Callable[[AutoencoderModel, int, int, float], None]
EpochCallback = Callable[[AutoencoderModel, int], None]


def make_windows(noisy: NormalizedWaveform, clean: NormalizedWaveform, window_len: int) -> list[Pair]:
    """Consecutive non-overlapping (noisy, clean) windows; any remainder is dropped."""
    if len(noisy) != len(clean):
        raise ShapeMismatchError(f"noisy has {len(noisy)} samples, clean has {len(clean)}")
    count = len(noisy) // window_len
    return [
        (noisy.samples[i * window_len:(i + 1) * window_len], clean.samples[i * window_len:(i + 1) * window_len])
        for i in range(count)
    ]


def _stack(pairs: Sequence[Pair], dtype: np.dtype) -> tuple[NDArray, NDArray]:
    lengths = {p[0].shape for p in pairs} | {p[1].shape for p in pairs}
    if len(lengths) != 1:
        raise ShapeMismatchError(f"all training windows must share one length, found {sorted(lengths)}")
    x = np.stack([p[0] for p in pairs]).astype(dtype)[..., None]
    y = np.stack([p[1] for p in pairs]).astype(dtype)[..., None]
    return x, y


def dataset_loss(model: AutoencoderModel, pairs: Sequence[Pair], batch_size: int = 8) -> float:
    """Per-element BCE of the model over all pairs."""
    if not pairs:
        raise ValueError("no pairs to score")
    x, y = _stack(pairs, model.dtype)
    total = []
    for start in range(0, len(x), batch_size):
        out, _ = model_forward(model, x[start:start + batch_size])
        total.append(bce_loss(y[start:start + batch_size], out) * out.size)
    return math.fsum(total) / y.size


def fit(
    model: AutoencoderModel,
    train_pairs: Sequence[Pair],
    val_pairs: Sequence[Pair],
    cfg: TrainConfig,
    on_step: Optional[StepCallback] = None,
    on_epoch: Optional[EpochCallback] = None,
) -> tuple[AutoencoderModel, LossCurve]:
    """
    Train ``model`` in place.

    Raises:
        EmptyTrainSetError: if there are no training pairs
        NonFiniteLossError: if a batch loss is NaN or infinite
    """
    if not train_pairs:
        raise EmptyTrainSetError("no training windows")

    x, y = _stack(train_pairs, model.dtype)
    n = len(x)
    rng = np.random.default_rng(cfg.seed)
    state = AdamState(lr=cfg.learning_rate, beta1=cfg.beta1, beta2=cfg.beta2, epsilon=cfg.epsilon)
    params = model.parameters()
    curve = LossCurve()

    if not val_pairs:
        logger.warning("Validation split is empty; val_loss will be null")

    logger.info(f"Training on {n} windows of {x.shape[1]} samples for {cfg.epochs} epochs")

    for epoch in range(1, cfg.epochs + 1):
        order = rng.permutation(n) if cfg.shuffle_each_epoch else np.arange(n)
        weighted = []

        for batch, start in enumerate(range(0, n, cfg.batch_size), start=1):
            idx = order[start:start + cfg.batch_size]
            out, cache = model_forward(model, x[idx])
            loss = bce_loss(y[idx], out)
            if not math.isfinite(loss):
                raise NonFiniteLossError(epoch, batch, loss)

            grads = model_backward(model, cache, bce_grad(y[idx], out).astype(model.dtype))
            adam_step(params, grads, state)
            model.mark_updated()
            constrain_model(model, cfg.max_norm)

            weighted.append(loss * len(idx))
            logger.debug(f"epoch {epoch} batch {batch}: loss {loss:.6f}")
            if on_step:
                on_step(model, epoch, batch, loss)

        train_loss = math.fsum(weighted) / n
        val_loss = dataset_loss(model, val_pairs, cfg.batch_size) if val_pairs else None
        if val_loss is not None and not math.isfinite(val_loss):
            raise NonFiniteLossError(epoch, 0, val_loss)
        curve.add(epoch, train_loss, val_loss)

        val_text = f"{val_loss:.6f}" if val_loss is not None else "n/a"
        logger.info(f"Epoch {epoch}/{cfg.epochs}: train_loss={train_loss:.6f} val_loss={val_text}")
        if on_epoch:
            on_epoch(model, epoch)

    return model, curve
