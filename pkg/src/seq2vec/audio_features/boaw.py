"""Bag-of-audio-words: k-means codebook over frames, multi-assignment histogram."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import NumericError
from .mfcc import FeatureSequence

DEFAULT_VOCAB_SIZE = 2048
DEFAULT_ASSIGNMENTS = 256

KMEANS_MAX_ITER = 25
KMEANS_SHIFT_TOL = 1e-6


@dataclass(frozen=True)
class BoawCodebook:
    centroids: np.ndarray  # (V, d)
    assignments_per_frame: int

    def __post_init__(self):
        if self.centroids.ndim != 2:
            raise ValueError("centroids must be a (V, d) matrix")
        if not np.all(np.isfinite(self.centroids)):
            raise ValueError("centroids must be finite")
        if not 1 <= self.assignments_per_frame <= self.centroids.shape[0]:
            raise ValueError("assignments_per_frame must be in [1, V]")

    @property
    def vocab_size(self) -> int:
        return int(self.centroids.shape[0])

    @property
    def dim(self) -> int:
        return int(self.centroids.shape[1])


def _squared_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    # ||x||^2 - 2 x.c + ||c||^2, clamped against tiny negative round-off
    d2 = (
        np.sum(points * points, axis=1)[:, None]
        - 2.0 * points @ centroids.T
        + np.sum(centroids * centroids, axis=1)[None, :]
    )
    return np.maximum(d2, 0.0)


def _kmeans_pp_init(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = points.shape[0]
    centroids = np.empty((k, points.shape[1]))
    centroids[0] = points[rng.integers(n)]
    closest = _squared_distances(points, centroids[0:1])[:, 0]
    for j in range(1, k):
        total = closest.sum()
        if total <= 0.0:
            # all remaining mass sits on chosen centroids; any point works
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=closest / total))
        centroids[j] = points[idx]
        closest = np.minimum(closest, _squared_distances(points, centroids[j : j + 1])[:, 0])
    return centroids


def kmeans(
    points: np.ndarray,
    k: int,
    rng: np.random.Generator,
    max_iter: int = KMEANS_MAX_ITER,
    shift_tol: float = KMEANS_SHIFT_TOL,
) -> tuple[np.ndarray, list[float]]:
    """Lloyd iterations with k-means++ seeding.

    Returns (centroids, per-iteration objective values). Empty clusters are
    reseeded to the point farthest from its assigned centroid. The objective
    (sum of squared distances to the nearest centroid) must not increase
    between iterations; an increase beyond round-off raises NumericError.
    """
    n = points.shape[0]
    if k < 1 or k > n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    centroids = _kmeans_pp_init(points, k, rng)
    objectives: list[float] = []
    for _ in range(max_iter):
        d2 = _squared_distances(points, centroids)
        assign = np.argmin(d2, axis=1)
        objective = float(d2[np.arange(n), assign].sum())
        if objectives and objective > objectives[-1] * (1 + 1e-12) + 1e-12:
            raise NumericError(
                f"k-means objective increased: {objectives[-1]} -> {objective}"
            )
        objectives.append(objective)

        new_centroids = centroids.copy()
        counts = np.bincount(assign, minlength=k)
        for j in range(k):
            if counts[j] > 0:
                new_centroids[j] = points[assign == j].mean(axis=0)
        for j in np.nonzero(counts == 0)[0]:
            farthest = int(np.argmax(d2[np.arange(n), assign]))
            new_centroids[j] = points[farthest]
            # keep a second empty cluster from grabbing the same point
            d2[farthest, :] = 0.0

        shift = float(np.max(np.abs(new_centroids - centroids)))
        centroids = new_centroids
        if shift < shift_tol:
            break
    return centroids, objectives


def fit_boaw_codebook(
    train_features: Iterable[FeatureSequence],
    vocab_size: int = DEFAULT_VOCAB_SIZE,
    seed: int = 0,
    assignments_per_frame: int = DEFAULT_ASSIGNMENTS,
) -> BoawCodebook:
    """Cluster pooled (standardized) training frames into vocab_size words."""
    pooled = np.concatenate([seq.frames for seq in train_features], axis=0)
    if pooled.shape[0] < vocab_size:
        raise ValueError(
            f"{pooled.shape[0]} pooled frames cannot support a vocabulary of {vocab_size}"
        )
    rng = np.random.default_rng(seed)
    centroids, _ = kmeans(pooled, vocab_size, rng)
    a = min(assignments_per_frame, vocab_size)
    return BoawCodebook(centroids=centroids, assignments_per_frame=a)


def boaw_encode(seq: FeatureSequence, cb: BoawCodebook) -> np.ndarray:
    """Histogram of each frame's `a` nearest words, normalized to sum 1."""
    if seq.dim != cb.dim:
        raise ValueError(f"feature dim {seq.dim} does not match codebook dim {cb.dim}")
    a = cb.assignments_per_frame
    d2 = _squared_distances(seq.frames, cb.centroids)
    if a < cb.vocab_size:
        nearest = np.argpartition(d2, a - 1, axis=1)[:, :a]
    else:
        nearest = np.tile(np.arange(cb.vocab_size), (seq.frame_count, 1))
    hist = np.zeros(cb.vocab_size)
    np.add.at(hist, nearest.ravel(), 1.0)
    return hist / (seq.frame_count * a)
