"""Sequence-to-vector encoder-decoder.

The encoder consumes the valid frames of a sequence in reverse time order;
the vector representation is the concatenation of every encoder layer's
final hidden state. The decoder, initialized layer-for-layer from those
states, reconstructs the sequence in forward order under teacher forcing:
its input at step t is the true frame t-1 (a zero vector at t = 1), and an
affine readout maps its top hidden state to a predicted frame. Training
minimizes mean squared reconstruction error over valid frames only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .audio_features.mfcc import FeatureSequence
from .gru_core.affine import AffineParams, affine_backward, affine_forward, init_affine
from .gru_core.gru import (
    GruLayerCache,
    GruLayerParams,
    gru_layer_backward,
    gru_layer_forward,
    init_gru_layer,
)


def parse_shape(shape: str | tuple[int, int]) -> tuple[int, int]:
    """Parse a 'units-layers' network shape label such as '512-1' or '64-2'."""
    if isinstance(shape, tuple):
        units, layers = shape
    else:
        try:
            units_s, layers_s = shape.split("-")
            units, layers = int(units_s), int(layers_s)
        except ValueError as exc:
            raise ValueError(f"shape must look like '512-1', got {shape!r}") from exc
    if units < 1 or layers < 1:
        raise ValueError(f"shape needs positive units and layers, got {units}-{layers}")
    return units, layers


@dataclass
class EncoderDecoderModel:
    """Mirrored encoder/decoder GRU stacks plus the decoder output readout."""

    encoder_layers: list[GruLayerParams]
    decoder_layers: list[GruLayerParams]
    output_projection: AffineParams

    def __post_init__(self):
        if len(self.encoder_layers) != len(self.decoder_layers):
            raise ValueError("encoder and decoder must have the same number of layers")
        widths = {p.hidden_dim for p in self.encoder_layers + self.decoder_layers}
        if len(widths) != 1:
            raise ValueError("all layers must share one hidden width")

    @property
    def feature_dim(self) -> int:
        return int(self.encoder_layers[0].input_dim)

    @property
    def hidden_units(self) -> int:
        return int(self.encoder_layers[0].hidden_dim)

    @property
    def num_layers(self) -> int:
        return len(self.encoder_layers)

    @property
    def representation_dim(self) -> int:
        return self.num_layers * self.hidden_units

    def parameters(self) -> dict[str, np.ndarray]:
        """Live views of every parameter tensor, in a stable order."""
        out: dict[str, np.ndarray] = {}
        for i, layer in enumerate(self.encoder_layers):
            for name, arr in layer.arrays().items():
                out[f"encoder.{i}.{name}"] = arr
        for i, layer in enumerate(self.decoder_layers):
            for name, arr in layer.arrays().items():
                out[f"decoder.{i}.{name}"] = arr
        out["projection.w"] = self.output_projection.w
        out["projection.b"] = self.output_projection.b
        return out

    def copy(self) -> "EncoderDecoderModel":
        return EncoderDecoderModel(
            encoder_layers=[p.copy() for p in self.encoder_layers],
            decoder_layers=[p.copy() for p in self.decoder_layers],
            output_projection=self.output_projection.copy(),
        )


def init_encoder_decoder(
    feature_dim: int,
    hidden_units: int,
    num_layers: int,
    rng: np.random.Generator,
) -> EncoderDecoderModel:
    encoder = []
    decoder = []
    for i in range(num_layers):
        in_dim = feature_dim if i == 0 else hidden_units
        encoder.append(init_gru_layer(in_dim, hidden_units, rng))
    for i in range(num_layers):
        in_dim = feature_dim if i == 0 else hidden_units
        decoder.append(init_gru_layer(in_dim, hidden_units, rng))
    projection = init_affine(hidden_units, feature_dim, rng)
    return EncoderDecoderModel(encoder, decoder, projection)


@dataclass(frozen=True)
class ReconstructionResult:
    reconstruction: np.ndarray  # (T, d)
    loss: float


@dataclass
class AutoencoderCache:
    data: np.ndarray  # (B, T, d)
    mask: np.ndarray  # (B, T) bool
    lengths: np.ndarray  # (B,)
    encoder_caches: list[GruLayerCache]
    decoder_caches: list[GruLayerCache]
    decoder_top_states: np.ndarray  # (B, T, n)
    reconstruction: np.ndarray  # (B, T, d)


def _as_frames(seq) -> np.ndarray:
    if isinstance(seq, FeatureSequence):
        return seq.frames
    return np.asarray(seq, dtype=np.float64)


def _full_mask(data: np.ndarray, mask) -> np.ndarray:
    if mask is None:
        return np.ones(data.shape[:-1], dtype=bool)
    return np.asarray(mask, dtype=bool)


def reverse_valid_prefix(data: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Reverse each row's valid frames in time; padding stays in place."""
    lengths = mask.sum(axis=1)
    t_idx = np.arange(data.shape[1])[None, :]
    src = np.where(t_idx < lengths[:, None], lengths[:, None] - 1 - t_idx, t_idx)
    return np.take_along_axis(data, src[:, :, None], axis=1)


def _shift_right(data: np.ndarray) -> np.ndarray:
    shifted = np.zeros_like(data)
    shifted[:, 1:] = data[:, :-1]
    return shifted


def _encoder_forward(model, data, mask):
    caches = []
    finals = []
    layer_input = reverse_valid_prefix(data, mask)
    for layer in model.encoder_layers:
        states, h_final, cache = gru_layer_forward(layer_input, mask, layer)
        caches.append(cache)
        finals.append(h_final)
        layer_input = states
    return finals, caches


def _decoder_forward(model, data, mask, init_states):
    caches = []
    layer_input = _shift_right(data)
    states = layer_input
    for layer, h0 in zip(model.decoder_layers, init_states):
        states, _, cache = gru_layer_forward(layer_input, mask, layer, h0)
        caches.append(cache)
        layer_input = states
    reconstruction = affine_forward(states, model.output_projection)
    return reconstruction, states, caches


def encode(seq, mask, model: EncoderDecoderModel) -> np.ndarray:
    """Fixed-length vector for one sequence: concatenated per-layer finals."""
    data = _as_frames(seq)[None]
    m = _full_mask(data, None if mask is None else np.asarray(mask, dtype=bool)[None, :])
    if not m.any():
        raise ValueError("cannot encode a fully masked sequence")
    finals, _ = _encoder_forward(model, data, m)
    return np.concatenate([f[0] for f in finals])


def encode_batch(data: np.ndarray, mask: np.ndarray | None, model: EncoderDecoderModel) -> np.ndarray:
    """(B, T, d) -> (B, L*n) representation matrix."""
    data = np.asarray(data, dtype=np.float64)
    m = _full_mask(data, mask)
    finals, _ = _encoder_forward(model, data, m)
    return np.concatenate(finals, axis=1)


def encoder_final_states(seq, mask, model: EncoderDecoderModel) -> list[np.ndarray]:
    """Per-layer final hidden states, the decoder's initialization."""
    data = _as_frames(seq)[None]
    m = _full_mask(data, None if mask is None else np.asarray(mask, dtype=bool)[None, :])
    finals, _ = _encoder_forward(model, data, m)
    return [f[0] for f in finals]


def masked_mse(x: np.ndarray, x_hat: np.ndarray, mask: np.ndarray | None = None) -> float:
    """Mean over valid frames of the squared frame error sum_d (x - x_hat)^2."""
    x = np.asarray(x, dtype=np.float64)
    x_hat = np.asarray(x_hat, dtype=np.float64)
    if x.shape != x_hat.shape or x.ndim != 2:
        raise ValueError("x and x_hat must be matching (T, d) matrices")
    if mask is None:
        valid = x.shape[0]
    else:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != (x.shape[0],):
            raise ValueError("mask length must equal the frame count")
        if np.any(mask[1:] & ~mask[:-1]):
            raise ValueError("mask must be a contiguous prefix of valid frames")
        valid = int(mask.sum())
    if valid == 0:
        raise ValueError("mask leaves no valid frames")
    diff = x[:valid] - x_hat[:valid]
    per_frame = np.sum(diff * diff, axis=1)
    # sequential accumulation keeps the value independent of numpy's
    # pairwise-summation blocking
    return sum(per_frame.tolist()) / valid


def batch_masked_mse(data: np.ndarray, recon: np.ndarray, mask: np.ndarray) -> float:
    """Per-sequence masked MSE averaged uniformly over the batch."""
    diff = np.where(mask[:, :, None], data - recon, 0.0)
    per_frame = np.sum(diff * diff, axis=2)
    lengths = mask.sum(axis=1)
    per_seq = per_frame.sum(axis=1) / lengths
    return float(per_seq.mean())


def decode_teacher_forced(
    seq, mask, model: EncoderDecoderModel, encoder_finals: list[np.ndarray]
) -> ReconstructionResult:
    """Reconstruct one sequence from its encoder states under teacher forcing."""
    data = _as_frames(seq)[None]
    m = _full_mask(data, None if mask is None else np.asarray(mask, dtype=bool)[None, :])
    if len(encoder_finals) != model.num_layers:
        raise ValueError("need one initial state per decoder layer")
    init = [np.asarray(h, dtype=np.float64).reshape(1, -1) for h in encoder_finals]
    for h in init:
        if h.shape[1] != model.hidden_units:
            raise ValueError("initial state width does not match the model")
    recon, _, _ = _decoder_forward(model, data, m, init)
    loss = masked_mse(data[0], recon[0], m[0])
    return ReconstructionResult(reconstruction=recon[0], loss=loss)


def reconstruct(seq, mask, model: EncoderDecoderModel) -> ReconstructionResult:
    """Encode then decode one sequence; loss is the masked reconstruction MSE."""
    finals = encoder_final_states(seq, mask, model)
    return decode_teacher_forced(seq, mask, model, finals)


def autoencoder_forward(
    model: EncoderDecoderModel, data: np.ndarray, mask: np.ndarray | None = None
) -> tuple[float, AutoencoderCache]:
    """Batched forward pass returning the training loss and a backprop cache."""
    data = np.asarray(data, dtype=np.float64)
    m = _full_mask(data, mask)
    lengths = m.sum(axis=1)
    if np.any(lengths == 0):
        raise ValueError("every sequence in the batch needs at least one valid frame")
    finals, enc_caches = _encoder_forward(model, data, m)
    recon, top_states, dec_caches = _decoder_forward(model, data, m, finals)
    loss = batch_masked_mse(data, recon, m)
    cache = AutoencoderCache(
        data=data,
        mask=m,
        lengths=lengths,
        encoder_caches=enc_caches,
        decoder_caches=dec_caches,
        decoder_top_states=top_states,
        reconstruction=recon,
    )
    return loss, cache


def autoencoder_backward(
    model: EncoderDecoderModel, cache: AutoencoderCache
) -> dict[str, np.ndarray]:
    """Exact gradients of the batched masked MSE w.r.t. every parameter."""
    batch = cache.data.shape[0]
    scale = 2.0 / (batch * cache.lengths[:, None, None])
    grad_recon = np.where(
        cache.mask[:, :, None], (cache.reconstruction - cache.data) * scale, 0.0
    )

    proj_grads, grad_top = affine_backward(
        cache.decoder_top_states, model.output_projection, grad_recon
    )

    grads: dict[str, np.ndarray] = {}
    grad_states = grad_top
    grad_enc_finals: list[np.ndarray | None] = [None] * model.num_layers
    for i in range(model.num_layers - 1, -1, -1):
        layer_grads, grad_in, grad_h0 = gru_layer_backward(
            cache.decoder_caches[i], model.decoder_layers[i], grad_states, None
        )
        for name, arr in layer_grads.arrays().items():
            grads[f"decoder.{i}.{name}"] = arr
        grad_enc_finals[i] = grad_h0
        grad_states = grad_in  # at i == 0 this is the teacher-forcing input gradient

    grad_states = None
    for i in range(model.num_layers - 1, -1, -1):
        layer_grads, grad_in, _ = gru_layer_backward(
            cache.encoder_caches[i], model.encoder_layers[i], grad_states, grad_enc_finals[i]
        )
        for name, arr in layer_grads.arrays().items():
            grads[f"encoder.{i}.{name}"] = arr
        grad_states = grad_in

    grads["projection.w"] = proj_grads.w
    grads["projection.b"] = proj_grads.b
    # return in the same order as model.parameters()
    return {name: grads[name] for name in model.parameters()}
