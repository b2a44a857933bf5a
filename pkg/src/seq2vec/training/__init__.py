"""Batching, optimizers, and the autoencoder / classifier training loops."""

from .autoencoder_loop import AutoencoderTrainConfig, TrainHistory, train_autoencoder
from .batching import PaddedBatch, batch_plan, pad_batch, upsample_balanced
from .classifier import (
    HIDDEN_UNITS_GRID,
    ClassifierTrainConfig,
    GruClassifierModel,
    classifier_loss_and_grads,
    classifier_predict,
    classifier_probabilities,
    init_gru_classifier,
    softmax,
    train_gru_classifier,
)
from .optim import (
    AdamState,
    adam_step,
    clip_global_norm,
    global_norm,
    sgd_step,
)
from .svm import (
    COMPLEXITY_GRID,
    SvmModel,
    select_complexity,
    svm_objective,
    svm_predict,
    train_svm,
)

__all__ = [
    "AdamState",
    "AutoencoderTrainConfig",
    "COMPLEXITY_GRID",
    "ClassifierTrainConfig",
    "GruClassifierModel",
    "HIDDEN_UNITS_GRID",
    "PaddedBatch",
    "SvmModel",
    "TrainHistory",
    "adam_step",
    "batch_plan",
    "classifier_loss_and_grads",
    "classifier_predict",
    "classifier_probabilities",
    "clip_global_norm",
    "global_norm",
    "init_gru_classifier",
    "pad_batch",
    "select_complexity",
    "sgd_step",
    "softmax",
    "svm_objective",
    "svm_predict",
    "train_gru_classifier",
    "train_svm",
    "upsample_balanced",
]
