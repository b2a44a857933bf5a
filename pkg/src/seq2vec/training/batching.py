"""Minibatch assembly with zero padding, plus class-balancing upsampling."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..audio_features.mfcc import FeatureSequence
from ..toolkit.manifest import DatasetManifest, ManifestEntry


@dataclass(frozen=True)
class PaddedBatch:
    data: np.ndarray  # (B, T_max, d)
    mask: np.ndarray  # (B, T_max) bool, true-prefix rows
    lengths: np.ndarray  # (B,)
    labels: np.ndarray | None = None

    @property
    def size(self) -> int:
        return int(self.data.shape[0])


def pad_batch(seqs: Sequence[FeatureSequence], labels=None) -> PaddedBatch:
    """Zero-pad sequences to the batch maximum length and build prefix masks."""
    if len(seqs) == 0:
        raise ValueError("cannot pad an empty batch")
    dims = {s.dim for s in seqs}
    if len(dims) != 1:
        raise ValueError(f"mixed feature dimensions in batch: {sorted(dims)}")
    d = dims.pop()
    lengths = np.array([s.frame_count for s in seqs], dtype=np.int64)
    t_max = int(lengths.max())
    data = np.zeros((len(seqs), t_max, d))
    for i, s in enumerate(seqs):
        data[i, : lengths[i]] = s.frames
    mask = np.arange(t_max)[None, :] < lengths[:, None]
    label_arr = None if labels is None else np.asarray(labels, dtype=np.int64)
    if label_arr is not None and label_arr.shape != (len(seqs),):
        raise ValueError("labels must match the number of sequences")
    return PaddedBatch(data=data, mask=mask, lengths=lengths, labels=label_arr)


def batch_plan(
    lengths: Sequence[int], batch_size: int, rng: np.random.Generator
) -> list[np.ndarray]:
    """Deterministic epoch plan: shuffle, bucket by length, shuffle batch order.

    The stable sort keeps similar lengths together (less padding waste) while
    the initial shuffle varies the composition of each bucket across epochs.
    """
    if batch_size < 1:
        raise ValueError("batch_size must be positive")
    order = rng.permutation(len(lengths))
    order = order[np.argsort(np.asarray(lengths)[order], kind="stable")]
    batches = [order[i : i + batch_size] for i in range(0, len(order), batch_size)]
    rng.shuffle(batches)
    return batches


def upsample_balanced(manifest: DatasetManifest, seed: int, split: str = "train") -> DatasetManifest:
    """Duplicate minority-class entries of one split until all classes match
    the majority count. Originals are all retained; duplicates are drawn with
    replacement under the given seed. The result repeats paths by design.
    """
    rng = np.random.default_rng(seed)
    counts = manifest.class_counts(split)
    if not counts:
        raise ValueError(f"split {split!r} holds no entries")
    present = manifest.class_counts(None)
    for class_id in range(manifest.num_classes):
        if present.get(class_id, 0) == 0:
            raise ValueError(f"class {class_id} has no instances")
    target = max(counts.values())
    extras: list[ManifestEntry] = []
    by_class: dict[int, list[ManifestEntry]] = {}
    for e in manifest.entries_for(split):
        by_class.setdefault(e.class_id, []).append(e)
    for class_id in sorted(by_class):
        pool = by_class[class_id]
        deficit = target - len(pool)
        if deficit > 0:
            picks = rng.integers(0, len(pool), size=deficit)
            extras.extend(pool[i] for i in picks)
    return DatasetManifest(
        entries=list(manifest.entries) + extras,
        category_names=list(manifest.category_names),
        class_names=list(manifest.class_names),
        root=manifest.root,
    )
