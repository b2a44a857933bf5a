"""Affine maps y = W x + b with exact gradients."""

from __future__ import annotations

from dataclasses import dataclass, fields

import numpy as np


@dataclass
class AffineParams:
    w: np.ndarray  # (out, in)
    b: np.ndarray  # (out,)

    def __post_init__(self):
        if self.w.ndim != 2 or self.b.shape != (self.w.shape[0],):
            raise ValueError("w must be (out, in) with a matching bias vector")

    @property
    def input_dim(self) -> int:
        return int(self.w.shape[1])

    @property
    def output_dim(self) -> int:
        return int(self.w.shape[0])

    def arrays(self) -> dict[str, np.ndarray]:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def zeros_like(self) -> "AffineParams":
        return AffineParams(w=np.zeros_like(self.w), b=np.zeros_like(self.b))

    def copy(self) -> "AffineParams":
        return AffineParams(w=self.w.copy(), b=self.b.copy())


def init_affine(input_dim: int, output_dim: int, rng: np.random.Generator) -> AffineParams:
    limit = np.sqrt(6.0 / (input_dim + output_dim))
    return AffineParams(
        w=rng.uniform(-limit, limit, size=(output_dim, input_dim)),
        b=np.zeros(output_dim),
    )


def affine_forward(x: np.ndarray, p: AffineParams) -> np.ndarray:
    """x: (..., in) -> (..., out)."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != p.input_dim:
        raise ValueError(f"input dim {x.shape[-1]} does not match projection {p.input_dim}")
    return x @ p.w.T + p.b


def affine_backward(
    x: np.ndarray, p: AffineParams, grad_out: np.ndarray
) -> tuple[AffineParams, np.ndarray]:
    """Returns (param_grads, grad_x); leading dims of x are flattened for the sums."""
    x = np.asarray(x, dtype=np.float64)
    grad_out = np.asarray(grad_out, dtype=np.float64)
    if grad_out.shape[:-1] != x.shape[:-1] or grad_out.shape[-1] != p.output_dim:
        raise ValueError("grad_out shape does not match the forward pass")
    x2 = x.reshape(-1, p.input_dim)
    g2 = grad_out.reshape(-1, p.output_dim)
    grads = AffineParams(w=g2.T @ x2, b=g2.sum(axis=0))
    return grads, grad_out @ p.w
