"""Autoencoder training: SGD with plateau-driven decay and early stopping.

The loop shuffles, pads, and steps through minibatches; every
check_interval batches it records a checkpoint whose statistic is the mean
batch loss over that interval. The learning rate is multiplied by `decay`
whenever the latest checkpoint fails to beat the minimum of the previous
`plateau_window` checkpoints, and training stops once `patience`
consecutive checkpoints bring no improvement of the best loss. The
returned model is the snapshot taken at the best checkpoint.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..audio_features.mfcc import FeatureSequence
from ..errors import DivergenceError
from ..seq2seq import (
    EncoderDecoderModel,
    autoencoder_backward,
    autoencoder_forward,
    init_encoder_decoder,
    parse_shape,
)
from .batching import batch_plan, pad_batch
from .optim import clip_global_norm, sgd_step


@dataclass
class AutoencoderTrainConfig:
    batch_size: int = 64
    initial_lr: float = 0.7
    decay: float = 0.99
    check_interval: int = 500
    plateau_window: int = 3
    clip_ratio: float = 5.0
    patience: int = 20
    seed: int = 0
    # optional cap for desk-scale runs; None trains until early stopping
    max_checkpoints: int | None = None

    def __post_init__(self):
        positives = (
            self.batch_size,
            self.decay,
            self.check_interval,
            self.plateau_window,
            self.clip_ratio,
            self.patience,
        )
        if any(v <= 0 for v in positives) or self.initial_lr < 0:
            raise ValueError("config values must be positive")
        if self.patience <= self.plateau_window:
            raise ValueError("patience must exceed plateau_window")


@dataclass
class TrainHistory:
    checkpoints: list[int] = field(default_factory=list)
    losses: list[float] = field(default_factory=list)
    learning_rates: list[float] = field(default_factory=list)
    elapsed: list[float] = field(default_factory=list)

    def record(self, index: int, loss: float, lr: float, seconds: float) -> None:
        if self.checkpoints and index <= self.checkpoints[-1]:
            raise ValueError("checkpoint indices must increase")
        self.checkpoints.append(index)
        self.losses.append(loss)
        self.learning_rates.append(lr)
        self.elapsed.append(seconds)

    def __len__(self) -> int:
        return len(self.checkpoints)

    @property
    def best_loss(self) -> float:
        return min(self.losses) if self.losses else float("nan")


def train_autoencoder(
    dataset: Sequence[FeatureSequence],
    shape: str | tuple[int, int],
    cfg: AutoencoderTrainConfig,
) -> tuple[EncoderDecoderModel, TrainHistory]:
    if len(dataset) == 0:
        raise ValueError("dataset is empty")
    hidden_units, num_layers = parse_shape(shape)
    feature_dim = dataset[0].dim
    rng = np.random.default_rng(cfg.seed)
    model = init_encoder_decoder(feature_dim, hidden_units, num_layers, rng)
    params = model.parameters()
    best_params = {k: v.copy() for k, v in params.items()}

    lengths = [s.frame_count for s in dataset]
    history = TrainHistory()
    lr = cfg.initial_lr
    best_loss = float("inf")
    stale = 0
    interval_losses: list[float] = []
    batches_done = 0
    start = time.perf_counter()
    stop = False

    while not stop:
        for batch_ids in batch_plan(lengths, cfg.batch_size, rng):
            batch = pad_batch([dataset[i] for i in batch_ids])
            loss, cache = autoencoder_forward(model, batch.data, batch.mask)
            if not np.isfinite(loss):
                raise DivergenceError(
                    f"training loss became non-finite at batch {batches_done + 1}"
                )
            grads = autoencoder_backward(model, cache)
            clip_global_norm(grads, cfg.clip_ratio)
            sgd_step(params, grads, lr)
            interval_losses.append(loss)
            batches_done += 1

            if batches_done % cfg.check_interval != 0:
                continue
            checkpoint_loss = float(np.mean(interval_losses))
            interval_losses = []
            recent = history.losses[-cfg.plateau_window :]
            if len(recent) == cfg.plateau_window and checkpoint_loss >= min(recent):
                lr *= cfg.decay
            history.record(
                len(history), checkpoint_loss, lr, time.perf_counter() - start
            )
            if checkpoint_loss < best_loss:
                best_loss = checkpoint_loss
                for k, v in params.items():
                    best_params[k][...] = v
                stale = 0
            else:
                stale += 1
            if stale >= cfg.patience:
                stop = True
                break
            if cfg.max_checkpoints is not None and len(history) >= cfg.max_checkpoints:
                stop = True
                break

    for k, v in params.items():
        v[...] = best_params[k]
    return model, history
