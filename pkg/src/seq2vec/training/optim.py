"""Gradient clipping and parameter update rules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..errors import DivergenceError


def global_norm(grads: Mapping[str, np.ndarray]) -> float:
    total = 0.0
    for g in grads.values():
        total += float(np.sum(g * g))
    return math.sqrt(total)


def clip_global_norm(grads: Mapping[str, np.ndarray], ratio: float) -> Mapping[str, np.ndarray]:
    """Scale all gradients so their joint Euclidean norm is at most ratio."""
    if ratio <= 0:
        raise ValueError("clip ratio must be positive")
    norm = global_norm(grads)
    if not math.isfinite(norm):
        raise DivergenceError(f"non-finite gradient norm {norm}")
    if norm > ratio:
        scale = ratio / norm
        for g in grads.values():
            g *= scale
    return grads


def sgd_step(
    params: Mapping[str, np.ndarray], grads: Mapping[str, np.ndarray], lr: float
) -> Mapping[str, np.ndarray]:
    """In-place p <- p - lr * g."""
    for name, p in params.items():
        p -= lr * grads[name]
    return params


ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPS = 1e-8


@dataclass
class AdamState:
    m: dict[str, np.ndarray]
    v: dict[str, np.ndarray]
    step: int = 0

    @classmethod
    def init_like(cls, params: Mapping[str, np.ndarray]) -> "AdamState":
        return cls(
            m={k: np.zeros_like(p) for k, p in params.items()},
            v={k: np.zeros_like(p) for k, p in params.items()},
        )


def adam_step(
    params: Mapping[str, np.ndarray],
    grads: Mapping[str, np.ndarray],
    state: AdamState,
    lr: float,
    beta1: float = ADAM_BETA1,
    beta2: float = ADAM_BETA2,
    eps: float = ADAM_EPS,
) -> tuple[Mapping[str, np.ndarray], AdamState]:
    """Bias-corrected first/second-moment update, in place."""
    state.step += 1
    t = state.step
    correction1 = 1.0 - beta1**t
    correction2 = 1.0 - beta2**t
    for name, p in params.items():
        g = grads[name]
        m = state.m[name]
        v = state.v[name]
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * (g * g)
        m_hat = m / correction1
        v_hat = v / correction2
        p -= lr * m_hat / (np.sqrt(v_hat) + eps)
    return params, state
