"""On-disk feature sets: one .npy per clip plus a JSON index.

.npy files are byte-deterministic, which keeps feature extraction
reproducible under a fixed manifest. Files are named by manifest index so
ordering is stable regardless of worker count.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable

import numpy as np

from ..audio_features.mfcc import FeatureSequence
from ..errors import DataError

THREADS_ENV = "SEQ2VEC_THREADS"


def worker_count() -> int:
    limit = os.cpu_count() or 1
    raw = os.environ.get(THREADS_ENV)
    if raw:
        try:
            limit = min(limit, max(int(raw), 1))
        except ValueError as exc:
            raise DataError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    return limit


def parallel_map(fn: Callable, items) -> list:
    """Map fn over items with at most worker_count() threads, order preserved."""
    items = list(items)
    workers = min(worker_count(), max(len(items), 1))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def feature_path(feature_dir, index: int) -> Path:
    return Path(feature_dir) / f"{index:05d}.npy"


def save_feature_set(
    feature_dir, sequences: list[FeatureSequence], window_ms: float, hop_ms: float
) -> None:
    out = Path(feature_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, seq in enumerate(sequences):
        np.save(feature_path(out, i), seq.frames)
    index = {
        "count": len(sequences),
        "dim": sequences[0].dim if sequences else 0,
        "window_ms": window_ms,
        "hop_ms": hop_ms,
    }
    (out / "features.json").write_text(
        json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load_feature_set(feature_dir) -> list[FeatureSequence]:
    out = Path(feature_dir)
    index_path = out / "features.json"
    if not index_path.exists():
        raise DataError(f"no features.json in {out}")
    index = json.loads(index_path.read_text(encoding="utf-8"))
    count = int(index["count"])
    sequences = []
    for i in range(count):
        path = feature_path(out, i)
        if not path.exists():
            raise DataError(f"missing feature file {path}")
        sequences.append(FeatureSequence(frames=np.load(path)))
    return sequences
