"""Per-dimension standardization fitted on pooled training frames."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .mfcc import FeatureSequence

# keeps constant dimensions from dividing by zero
STD_FLOOR = 1e-8


@dataclass(frozen=True)
class Standardizer:
    mean: np.ndarray
    std: np.ndarray

    def __post_init__(self):
        if self.mean.shape != self.std.shape or self.mean.ndim != 1:
            raise ValueError("mean and std must be matching 1-D vectors")
        if np.any(self.std <= 0):
            raise ValueError("std entries must be positive")

    @property
    def dim(self) -> int:
        return int(self.mean.size)


def fit_standardizer(train_features: Iterable[FeatureSequence]) -> Standardizer:
    """Pool all training frames and compute per-dimension mean and std.

    Uses the population convention (ddof=0); stds below STD_FLOOR are floored.
    """
    stacks = [seq.frames for seq in train_features]
    if not stacks:
        raise ValueError("need at least one feature sequence")
    pooled = np.concatenate(stacks, axis=0)
    if pooled.shape[0] < 2:
        raise ValueError("need at least two pooled frames to fit a standardizer")
    mean = pooled.mean(axis=0)
    std = np.maximum(pooled.std(axis=0), STD_FLOOR)
    return Standardizer(mean=mean, std=std)


def apply_standardizer(seq: FeatureSequence, s: Standardizer) -> FeatureSequence:
    if seq.dim != s.dim:
        raise ValueError(f"feature dim {seq.dim} does not match standardizer dim {s.dim}")
    return FeatureSequence(frames=(seq.frames - s.mean) / s.std)


def invert_standardizer(seq: FeatureSequence, s: Standardizer) -> FeatureSequence:
    if seq.dim != s.dim:
        raise ValueError(f"feature dim {seq.dim} does not match standardizer dim {s.dim}")
    return FeatureSequence(frames=seq.frames * s.std + s.mean)
