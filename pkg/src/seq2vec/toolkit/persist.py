"""Conversions between domain models and the binary container format."""

from __future__ import annotations

import dataclasses

import numpy as np

from ..audio_features.boaw import BoawCodebook
from ..audio_features.standardize import Standardizer
from ..errors import ContainerError
from ..gru_core.affine import AffineParams
from ..gru_core.gru import GruLayerParams
from ..seq2seq import EncoderDecoderModel
from ..training.classifier import GruClassifierModel
from ..training.svm import SvmModel
from .container import ModelContainer

_GRU_FIELDS = ("w_xz", "w_xr", "w_xh", "w_hz", "w_hr", "w_hh", "b_z", "b_r", "b_h")


def _config_echo(cfg) -> dict:
    if cfg is None:
        return {}
    if dataclasses.is_dataclass(cfg):
        return dataclasses.asdict(cfg)
    return dict(cfg)


def autoencoder_to_container(model: EncoderDecoderModel, config=None) -> ModelContainer:
    meta = {
        "feature_dim": model.feature_dim,
        "hidden_units": model.hidden_units,
        "num_layers": model.num_layers,
        "config": _config_echo(config),
    }
    return ModelContainer(kind="autoencoder", arrays=dict(model.parameters()), metadata=meta)


def _gru_layer_from(arrays: dict[str, np.ndarray], prefix: str) -> GruLayerParams:
    try:
        return GruLayerParams(**{f: arrays[f"{prefix}.{f}"] for f in _GRU_FIELDS})
    except KeyError as exc:
        raise ContainerError(f"missing parameter {exc} under {prefix}") from exc


def autoencoder_from_container(container: ModelContainer) -> EncoderDecoderModel:
    meta = container.metadata
    layers = int(meta["num_layers"])
    encoder = [_gru_layer_from(container.arrays, f"encoder.{i}") for i in range(layers)]
    decoder = [_gru_layer_from(container.arrays, f"decoder.{i}") for i in range(layers)]
    try:
        projection = AffineParams(
            w=container.arrays["projection.w"], b=container.arrays["projection.b"]
        )
    except KeyError as exc:
        raise ContainerError(f"missing parameter {exc}") from exc
    return EncoderDecoderModel(encoder, decoder, projection)


def classifier_to_container(model: GruClassifierModel, config=None) -> ModelContainer:
    meta = {
        "input_dim": model.input_dim,
        "hidden_units": model.hidden_units,
        "num_classes": model.num_classes,
        "config": _config_echo(config),
    }
    return ModelContainer(kind="gru-classifier", arrays=dict(model.parameters()), metadata=meta)


def classifier_from_container(container: ModelContainer) -> GruClassifierModel:
    gru = _gru_layer_from(container.arrays, "gru")
    try:
        readout = AffineParams(w=container.arrays["readout.w"], b=container.arrays["readout.b"])
    except KeyError as exc:
        raise ContainerError(f"missing parameter {exc}") from exc
    return GruClassifierModel(gru=gru, readout=readout)


def svm_to_container(model: SvmModel) -> ModelContainer:
    meta = {"complexity": model.complexity, "num_classes": model.num_classes}
    arrays = {"weights": model.weights, "biases": model.biases}
    return ModelContainer(kind="svm", arrays=arrays, metadata=meta)


def svm_from_container(container: ModelContainer) -> SvmModel:
    return SvmModel(
        weights=container.arrays["weights"],
        biases=container.arrays["biases"],
        complexity=float(container.metadata["complexity"]),
    )


def standardizer_to_container(s: Standardizer) -> ModelContainer:
    return ModelContainer(kind="standardizer", arrays={"mean": s.mean, "std": s.std})


def standardizer_from_container(container: ModelContainer) -> Standardizer:
    return Standardizer(mean=container.arrays["mean"], std=container.arrays["std"])


def codebook_to_container(cb: BoawCodebook) -> ModelContainer:
    meta = {"assignments_per_frame": cb.assignments_per_frame}
    return ModelContainer(kind="codebook", arrays={"centroids": cb.centroids}, metadata=meta)


def codebook_from_container(container: ModelContainer) -> BoawCodebook:
    return BoawCodebook(
        centroids=container.arrays["centroids"],
        assignments_per_frame=int(container.metadata["assignments_per_frame"]),
    )
