"""GRU classifier over fixed-length representations.

Each representation passes through one GRU layer as a single-timestep
sequence (initial state zero), then an affine readout and softmax over the
classes. Training follows Adam with a staircase exponential learning-rate
decay, global-norm clipping, and a fixed epoch budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import DivergenceError
from ..gru_core.affine import AffineParams, affine_backward, affine_forward, init_affine
from ..gru_core.gru import (
    GruLayerParams,
    gru_layer_backward,
    gru_layer_forward,
    init_gru_layer,
)
from .optim import AdamState, adam_step, clip_global_norm

HIDDEN_UNITS_GRID = (128, 256, 512, 1024)


@dataclass
class ClassifierTrainConfig:
    initial_lr: float = 1e-4
    exp_decay_every: int = 10_000
    decay_rate: float = 0.96
    clip_ratio: float = 1.2
    batch_size: int = 128
    epochs: int = 500
    hidden_units: int = 128
    seed: int = 0

    def __post_init__(self):
        if min(
            self.initial_lr,
            self.exp_decay_every,
            self.decay_rate,
            self.clip_ratio,
            self.batch_size,
            self.epochs,
            self.hidden_units,
        ) <= 0:
            raise ValueError("config values must be positive")


@dataclass
class GruClassifierModel:
    gru: GruLayerParams
    readout: AffineParams

    @property
    def input_dim(self) -> int:
        return self.gru.input_dim

    @property
    def hidden_units(self) -> int:
        return self.gru.hidden_dim

    @property
    def num_classes(self) -> int:
        return self.readout.output_dim

    def parameters(self) -> dict[str, np.ndarray]:
        out = {f"gru.{name}": arr for name, arr in self.gru.arrays().items()}
        out["readout.w"] = self.readout.w
        out["readout.b"] = self.readout.b
        return out


def init_gru_classifier(
    input_dim: int, hidden_units: int, num_classes: int, rng: np.random.Generator
) -> GruClassifierModel:
    return GruClassifierModel(
        gru=init_gru_layer(input_dim, hidden_units, rng),
        readout=init_affine(hidden_units, num_classes, rng),
    )


def softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    ex = np.exp(shifted)
    return ex / ex.sum(axis=-1, keepdims=True)


def classifier_probabilities(model: GruClassifierModel, reps: np.ndarray) -> np.ndarray:
    """(N, D) representations -> (N, K) class probabilities."""
    reps = np.atleast_2d(np.asarray(reps, dtype=np.float64))
    states, h_final, _ = gru_layer_forward(reps[:, None, :], None, model.gru)
    return softmax(affine_forward(h_final, model.readout))


def classifier_predict(model: GruClassifierModel, reps: np.ndarray) -> np.ndarray:
    return np.argmax(classifier_probabilities(model, reps), axis=-1)


def classifier_loss_and_grads(
    model: GruClassifierModel, reps: np.ndarray, labels: np.ndarray
) -> tuple[float, dict[str, np.ndarray]]:
    """Mean cross-entropy and exact gradients for one batch."""
    reps = np.asarray(reps, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    batch = reps.shape[0]
    _, h_final, cache = gru_layer_forward(reps[:, None, :], None, model.gru)
    logits = affine_forward(h_final, model.readout)
    probs = softmax(logits)
    picked = probs[np.arange(batch), labels]
    loss = float(-np.mean(np.log(np.maximum(picked, 1e-300))))

    dlogits = probs.copy()
    dlogits[np.arange(batch), labels] -= 1.0
    dlogits /= batch
    readout_grads, dh = affine_backward(h_final, model.readout, dlogits)
    gru_grads, _, _ = gru_layer_backward(cache, model.gru, grad_h_final=dh)

    grads = {f"gru.{name}": arr for name, arr in gru_grads.arrays().items()}
    grads["readout.w"] = readout_grads.w
    grads["readout.b"] = readout_grads.b
    return loss, grads


def train_gru_classifier(
    representations: np.ndarray,
    labels: np.ndarray,
    num_classes: int,
    cfg: ClassifierTrainConfig,
) -> GruClassifierModel:
    reps = np.asarray(representations, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if reps.ndim != 2 or reps.shape[0] != labels.shape[0]:
        raise ValueError("representations must be (N, D) with one label per row")
    if num_classes < 2:
        raise ValueError("need at least two classes")
    if labels.min() < 0 or labels.max() >= num_classes:
        raise ValueError("label out of range")

    rng = np.random.default_rng(cfg.seed)
    model = init_gru_classifier(reps.shape[1], cfg.hidden_units, num_classes, rng)
    params = model.parameters()
    state = AdamState.init_like(params)

    step = 0
    for _ in range(cfg.epochs):
        order = rng.permutation(reps.shape[0])
        for lo in range(0, len(order), cfg.batch_size):
            ids = order[lo : lo + cfg.batch_size]
            loss, grads = classifier_loss_and_grads(model, reps[ids], labels[ids])
            if not np.isfinite(loss):
                raise DivergenceError(f"classifier loss became non-finite at step {step}")
            clip_global_norm(grads, cfg.clip_ratio)
            lr = cfg.initial_lr * cfg.decay_rate ** (step // cfg.exp_decay_every)
            adam_step(params, grads, state, lr)
            step += 1
    return model
