"""CSV tables shared by CLI commands: representations and predictions."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from ..errors import DataError


def write_representations(path, ids, labels, vectors: np.ndarray) -> None:
    """Rows of id,label,v_0..v_{D-1}; floats use shortest round-trip repr."""
    vectors = np.asarray(vectors)
    header = ["id", "label"] + [f"v_{j}" for j in range(vectors.shape[1])]
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for i, label, row in zip(ids, labels, vectors):
            writer.writerow([int(i), int(label)] + [repr(float(x)) for x in row])


def read_representations(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Returns (ids, labels, vectors)."""
    with open(Path(path), "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or header[:2] != ["id", "label"]:
            raise DataError(f"not a representation table: {path}")
        dim = len(header) - 2
        ids, labels, rows = [], [], []
        for record in reader:
            if len(record) != dim + 2:
                raise DataError(f"row width mismatch in {path}")
            ids.append(int(record[0]))
            labels.append(int(record[1]))
            rows.append([float(x) for x in record[2:]])
    return (
        np.array(ids, dtype=np.int64),
        np.array(labels, dtype=np.int64),
        np.array(rows, dtype=np.float64).reshape(len(rows), dim),
    )


def write_predictions(path, ids, truth, preds) -> None:
    with open(Path(path), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "truth", "pred"])
        for i, t, p in zip(ids, truth, preds):
            writer.writerow([int(i), int(t), int(p)])


def read_predictions(path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    with open(Path(path), "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["id", "truth", "pred"]:
            raise DataError(f"not a predictions table: {path}")
        rows = [(int(a), int(b), int(c)) for a, b, c in reader]
    if not rows:
        raise DataError(f"predictions table is empty: {path}")
    ids, truth, preds = zip(*rows)
    return (
        np.array(ids, dtype=np.int64),
        np.array(truth, dtype=np.int64),
        np.array(preds, dtype=np.int64),
    )
