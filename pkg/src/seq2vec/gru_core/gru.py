"""GRU layers: exact float64 forward and backward passes.

Conventions: inputs are row vectors, so a step computes x @ w.T with weight
matrices stored (hidden, input) or (hidden, hidden). All functions accept a
single vector (m,) or a batch (B, m) interchangeably; sequence functions
take (T, m) or (B, T, m) through the batched core.

The state update interpolates toward the candidate under the update gate:
h_t = (1 - z_t) * h_prev + z_t * cand_t, so z near zero keeps the previous
state and z near one overwrites it.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np


def sigmoid(x: np.ndarray) -> np.ndarray:
    """Logistic function, exponentiating only on the negative half-line."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    pos = x >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-x[pos]))
    ex = np.exp(x[~pos])
    out[~pos] = ex / (1.0 + ex)
    return out


@dataclass
class GruLayerParams:
    """Nine parameter tensors of one GRU layer (update z, reset r, candidate h)."""

    w_xz: np.ndarray  # (n, m)
    w_xr: np.ndarray  # (n, m)
    w_xh: np.ndarray  # (n, m)
    w_hz: np.ndarray  # (n, n)
    w_hr: np.ndarray  # (n, n)
    w_hh: np.ndarray  # (n, n)
    b_z: np.ndarray  # (n,)
    b_r: np.ndarray  # (n,)
    b_h: np.ndarray  # (n,)

    def __post_init__(self):
        n, m = self.w_xz.shape
        for name in ("w_xr", "w_xh"):
            if getattr(self, name).shape != (n, m):
                raise ValueError(f"{name} must have shape {(n, m)}")
        for name in ("w_hz", "w_hr", "w_hh"):
            if getattr(self, name).shape != (n, n):
                raise ValueError(f"{name} must have shape {(n, n)}")
        for name in ("b_z", "b_r", "b_h"):
            if getattr(self, name).shape != (n,):
                raise ValueError(f"{name} must have shape {(n,)}")

    @property
    def input_dim(self) -> int:
        return int(self.w_xz.shape[1])

    @property
    def hidden_dim(self) -> int:
        return int(self.w_xz.shape[0])

    def arrays(self) -> dict[str, np.ndarray]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def zeros_like(self) -> "GruLayerParams":
        return GruLayerParams(**{k: np.zeros_like(v) for k, v in self.arrays().items()})

    def copy(self) -> "GruLayerParams":
        return GruLayerParams(**{k: v.copy() for k, v in self.arrays().items()})


def _glorot(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    limit = np.sqrt(6.0 / (rows + cols))
    return rng.uniform(-limit, limit, size=(rows, cols))


def init_gru_layer(input_dim: int, hidden_dim: int, rng: np.random.Generator) -> GruLayerParams:
    """Uniform +-sqrt(6 / (fan_in + fan_out)) weights, zero biases."""
    return GruLayerParams(
        w_xz=_glorot(rng, hidden_dim, input_dim),
        w_xr=_glorot(rng, hidden_dim, input_dim),
        w_xh=_glorot(rng, hidden_dim, input_dim),
        w_hz=_glorot(rng, hidden_dim, hidden_dim),
        w_hr=_glorot(rng, hidden_dim, hidden_dim),
        w_hh=_glorot(rng, hidden_dim, hidden_dim),
        b_z=np.zeros(hidden_dim),
        b_r=np.zeros(hidden_dim),
        b_h=np.zeros(hidden_dim),
    )


@dataclass
class GruCellCache:
    x: np.ndarray
    h_prev: np.ndarray
    z: np.ndarray
    r: np.ndarray
    cand: np.ndarray


def _cell_step(x, h_prev, p: GruLayerParams):
    z = sigmoid(x @ p.w_xz.T + h_prev @ p.w_hz.T + p.b_z)
    r = sigmoid(x @ p.w_xr.T + h_prev @ p.w_hr.T + p.b_r)
    cand = np.tanh(x @ p.w_xh.T + (r * h_prev) @ p.w_hh.T + p.b_h)
    h = (1.0 - z) * h_prev + z * cand
    return h, z, r, cand


def gru_cell_forward(
    x: np.ndarray, h_prev: np.ndarray, p: GruLayerParams
) -> tuple[np.ndarray, GruCellCache]:
    """One GRU step. x: (..., m), h_prev: (..., n) -> h: (..., n)."""
    x = np.asarray(x, dtype=np.float64)
    h_prev = np.asarray(h_prev, dtype=np.float64)
    if x.shape[-1] != p.input_dim:
        raise ValueError(f"input dim {x.shape[-1]} does not match layer input {p.input_dim}")
    if h_prev.shape[-1] != p.hidden_dim:
        raise ValueError(f"state dim {h_prev.shape[-1]} does not match layer width {p.hidden_dim}")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(h_prev))):
        raise ValueError("non-finite input to GRU cell")
    h, z, r, cand = _cell_step(x, h_prev, p)
    return h, GruCellCache(x=x, h_prev=h_prev, z=z, r=r, cand=cand)


def gru_cell_backward(
    cache: GruCellCache, p: GruLayerParams, grad_h: np.ndarray
) -> tuple[GruLayerParams, np.ndarray, np.ndarray]:
    """Gradients of one step. Returns (param_grads, grad_x, grad_h_prev)."""
    x = np.atleast_2d(cache.x)
    h_prev = np.atleast_2d(cache.h_prev)
    z, r, cand = np.atleast_2d(cache.z), np.atleast_2d(cache.r), np.atleast_2d(cache.cand)
    g = np.atleast_2d(np.asarray(grad_h, dtype=np.float64))

    da_c = (g * z) * (1.0 - cand * cand)
    dhr = da_c @ p.w_hh
    da_r = (dhr * h_prev) * r * (1.0 - r)
    da_z = (g * (cand - h_prev)) * z * (1.0 - z)

    grads = GruLayerParams(
        w_xz=da_z.T @ x,
        w_xr=da_r.T @ x,
        w_xh=da_c.T @ x,
        w_hz=da_z.T @ h_prev,
        w_hr=da_r.T @ h_prev,
        w_hh=da_c.T @ (r * h_prev),
        b_z=da_z.sum(axis=0),
        b_r=da_r.sum(axis=0),
        b_h=da_c.sum(axis=0),
    )
    grad_x = da_z @ p.w_xz + da_r @ p.w_xr + da_c @ p.w_xh
    grad_h_prev = g * (1.0 - z) + dhr * r + da_r @ p.w_hr + da_z @ p.w_hz
    if np.asarray(cache.x).ndim == 1:
        return grads, grad_x[0], grad_h_prev[0]
    return grads, grad_x, grad_h_prev


@dataclass
class GruLayerCache:
    """Everything the batched backward pass needs from a forward run."""

    inputs: np.ndarray  # (B, T, m)
    mask: np.ndarray  # (B, T) bool
    h0: np.ndarray  # (B, n)
    states: np.ndarray  # (B, T, n), carried values at masked steps
    z: np.ndarray  # (B, T, n)
    r: np.ndarray  # (B, T, n)
    cand: np.ndarray  # (B, T, n)


def _validate_prefix_mask(mask: np.ndarray) -> None:
    # once a row goes invalid it must stay invalid
    if mask.ndim == 1:
        mask = mask[None, :]
    if np.any(mask[:, 1:] & ~mask[:, :-1]):
        raise ValueError("mask must be a contiguous prefix of valid frames")


def gru_layer_forward(
    inputs: np.ndarray,
    mask: np.ndarray | None,
    p: GruLayerParams,
    h0: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, GruLayerCache]:
    """Run one layer over a (B, T, m) batch.

    Masked steps carry the state through unchanged, so trailing padding
    never alters the final state. Returns (states, h_final, cache).
    """
    inputs = np.asarray(inputs, dtype=np.float64)
    batch, length, _ = inputs.shape
    n = p.hidden_dim
    if mask is None:
        mask = np.ones((batch, length), dtype=bool)
    else:
        mask = np.asarray(mask, dtype=bool)
    _validate_prefix_mask(mask)
    if not np.all(np.isfinite(inputs)):
        raise ValueError("non-finite input sequence")

    h = np.zeros((batch, n)) if h0 is None else np.array(h0, dtype=np.float64)
    h0_stored = h.copy()
    states = np.empty((batch, length, n))
    zs = np.empty((batch, length, n))
    rs = np.empty((batch, length, n))
    cands = np.empty((batch, length, n))
    for t in range(length):
        h_new, z, r, cand = _cell_step(inputs[:, t], h, p)
        valid = mask[:, t][:, None]
        h = np.where(valid, h_new, h)
        states[:, t] = h
        zs[:, t] = z
        rs[:, t] = r
        cands[:, t] = cand
    cache = GruLayerCache(
        inputs=inputs, mask=mask, h0=h0_stored, states=states, z=zs, r=rs, cand=cands
    )
    return states, h, cache


def gru_layer_backward(
    cache: GruLayerCache,
    p: GruLayerParams,
    grad_states: np.ndarray | None = None,
    grad_h_final: np.ndarray | None = None,
) -> tuple[GruLayerParams, np.ndarray, np.ndarray]:
    """Backpropagate through time for one layer.

    grad_states is the upstream gradient on every stored state, grad_h_final
    an extra gradient on the final state. Masked steps contribute no
    parameter or input gradient; they pass the state gradient straight
    through. Returns (param_grads, grad_inputs, grad_h0).
    """
    batch, length, _ = cache.inputs.shape
    n = p.hidden_dim
    grads = p.zeros_like()
    grad_inputs = np.zeros_like(cache.inputs)
    carry = np.zeros((batch, n)) if grad_h_final is None else np.array(grad_h_final, dtype=np.float64)

    for t in range(length - 1, -1, -1):
        g = carry if grad_states is None else carry + grad_states[:, t]
        h_prev = cache.states[:, t - 1] if t > 0 else cache.h0
        valid = cache.mask[:, t][:, None]
        z = cache.z[:, t]
        r = cache.r[:, t]
        cand = cache.cand[:, t]

        da_c = np.where(valid, (g * z) * (1.0 - cand * cand), 0.0)
        dhr = da_c @ p.w_hh
        da_r = (dhr * h_prev) * r * (1.0 - r)
        da_z = np.where(valid, (g * (cand - h_prev)) * z * (1.0 - z), 0.0)

        x_t = cache.inputs[:, t]
        grads.w_xz += da_z.T @ x_t
        grads.w_xr += da_r.T @ x_t
        grads.w_xh += da_c.T @ x_t
        grads.w_hz += da_z.T @ h_prev
        grads.w_hr += da_r.T @ h_prev
        grads.w_hh += da_c.T @ (r * h_prev)
        grads.b_z += da_z.sum(axis=0)
        grads.b_r += da_r.sum(axis=0)
        grads.b_h += da_c.sum(axis=0)

        grad_inputs[:, t] = da_z @ p.w_xz + da_r @ p.w_xr + da_c @ p.w_xh
        through = g * (1.0 - z) + dhr * r + da_r @ p.w_hr + da_z @ p.w_hz
        carry = np.where(valid, through, g)
    return grads, grad_inputs, carry


def gru_sequence_forward(
    seq: np.ndarray,
    mask: np.ndarray | None,
    p: GruLayerParams,
    h0: np.ndarray | None = None,
) -> tuple[np.ndarray, np.ndarray, GruLayerCache]:
    """Single-sequence wrapper: seq (T, m) -> (states (T, n), h_final (n,), cache)."""
    seq = np.asarray(seq, dtype=np.float64)
    if seq.ndim != 2:
        raise ValueError("seq must be a (T, m) matrix")
    batch_mask = None if mask is None else np.asarray(mask, dtype=bool)[None, :]
    batch_h0 = None if h0 is None else np.asarray(h0, dtype=np.float64)[None, :]
    states, h_final, cache = gru_layer_forward(seq[None], batch_mask, p, batch_h0)
    return states[0], h_final[0], cache


def gru_backward(
    cache: GruLayerCache,
    p: GruLayerParams,
    grad_hidden: np.ndarray | None = None,
    grad_hfinal: np.ndarray | None = None,
) -> tuple[GruLayerParams, np.ndarray, np.ndarray]:
    """Single-sequence wrapper around gru_layer_backward."""
    gs = None if grad_hidden is None else np.asarray(grad_hidden, dtype=np.float64)[None]
    gf = None if grad_hfinal is None else np.asarray(grad_hfinal, dtype=np.float64)[None]
    grads, grad_inputs, grad_h0 = gru_layer_backward(cache, p, gs, gf)
    return grads, grad_inputs[0], grad_h0[0]
