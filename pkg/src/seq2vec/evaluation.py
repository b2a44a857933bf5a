"""Classification metrics, LDA projection, and plot-ready CSV export.

Metric conventions: unweighted accuracy is the mean of per-class recalls;
macro F1 is the harmonic mean of the unweighted precision and unweighted
recall means (not the mean of per-class F1 scores). Classes with no true
instances are excluded from both metrics with a warning, so small runs stay
meaningful. The per-class loops are deliberately plain Python so the values
are bit-for-bit reproducible by a naive reimplementation.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

from .errors import NumericError
from .training.autoencoder_loop import TrainHistory

LDA_RIDGE_FACTOR = 1e-6


def confusion(preds, truth, num_classes: int) -> np.ndarray:
    """counts[i, j] = number of instances with true class i predicted as j."""
    preds = np.asarray(preds, dtype=np.int64)
    truth = np.asarray(truth, dtype=np.int64)
    if preds.shape != truth.shape or preds.ndim != 1:
        raise ValueError("preds and truth must be 1-D arrays of equal length")
    if preds.size and (
        preds.min() < 0 or preds.max() >= num_classes or truth.min() < 0 or truth.max() >= num_classes
    ):
        raise ValueError(f"class ids must lie in [0, {num_classes})")
    cm = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(cm, (truth, preds), 1)
    return cm


def _check_matrix(cm: np.ndarray) -> np.ndarray:
    cm = np.asarray(cm)
    if cm.ndim != 2 or cm.shape[0] != cm.shape[1]:
        raise ValueError("confusion matrix must be square")
    if np.any(cm < 0):
        raise ValueError("confusion matrix entries must be non-negative")
    return cm


def _supported_classes(cm: np.ndarray) -> list[int]:
    k = cm.shape[0]
    supported = [i for i in range(k) if cm[i].sum() > 0]
    if len(supported) < k:
        missing = sorted(set(range(k)) - set(supported))
        warnings.warn(
            f"classes without true instances excluded from metrics: {missing}",
            stacklevel=3,
        )
    if not supported:
        raise ValueError("confusion matrix holds no instances")
    return supported


def unweighted_accuracy(cm: np.ndarray) -> float:
    """Mean of per-class recalls over classes that have true instances."""
    cm = _check_matrix(cm)
    supported = _supported_classes(cm)
    total = 0.0
    for i in supported:
        total += float(cm[i, i]) / float(cm[i].sum())
    return total / len(supported)


def macro_f1(cm: np.ndarray) -> float:
    """Harmonic mean of unweighted precision and unweighted recall.

    Among supported classes, a class nobody predicted contributes
    precision 0. Returns 0 when precision + recall is 0.
    """
    cm = _check_matrix(cm)
    supported = _supported_classes(cm)
    precision_total = 0.0
    recall_total = 0.0
    for i in supported:
        predicted = float(cm[:, i].sum())
        if predicted > 0:
            precision_total += float(cm[i, i]) / predicted
        recall_total += float(cm[i, i]) / float(cm[i].sum())
    precision = precision_total / len(supported)
    recall = recall_total / len(supported)
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


@dataclass(frozen=True)
class LdaProjection:
    directions: np.ndarray  # (2, D)
    points: np.ndarray  # (N, 2)
    labels: np.ndarray  # (N,)


def lda_project(reps: np.ndarray, labels, out_dims: int = 2) -> LdaProjection:
    """Project onto the leading discriminant directions of S_w^-1 S_b.

    The within-class scatter is ridge-regularized by
    (LDA_RIDGE_FACTOR * trace(S_w) / D) * I to keep the generalized
    eigenproblem well posed independent of scale.
    """
    reps = np.asarray(reps, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    n, d = reps.shape
    classes = np.unique(labels)
    k = classes.size
    if k < out_dims + 1:
        raise ValueError(
            f"{k} classes admit only {k - 1} discriminant directions, need {out_dims}"
        )
    if n <= k:
        raise ValueError("need more points than classes")
    if d < out_dims:
        raise ValueError(f"need at least {out_dims} feature dimensions")

    mean = reps.mean(axis=0)
    s_w = np.zeros((d, d))
    s_b = np.zeros((d, d))
    for c in classes:
        members = reps[labels == c]
        mu = members.mean(axis=0)
        centered = members - mu
        s_w += centered.T @ centered
        offset = (mu - mean)[:, None]
        s_b += members.shape[0] * (offset @ offset.T)

    ridge = LDA_RIDGE_FACTOR * np.trace(s_w) / d
    s_w_reg = s_w + ridge * np.eye(d)
    try:
        eigvals, eigvecs = scipy.linalg.eigh(s_b, s_w_reg)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise NumericError(f"singular within-class scatter: {exc}") from exc
    order = np.argsort(eigvals)[::-1][:out_dims]
    directions = eigvecs[:, order].T
    points = (reps - mean) @ directions.T
    return LdaProjection(directions=directions, points=points, labels=labels)


def _write_rows(path, header, rows) -> None:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def export_plot_csv(obj, path) -> None:
    """Write a plot-ready CSV for a confusion matrix, LDA projection, or
    training history. Schemas: true,pred,count / x,y,class / checkpoint,loss,lr.
    """
    if isinstance(obj, LdaProjection):
        rows = [
            (repr(float(x)), repr(float(y)), int(c))
            for (x, y), c in zip(obj.points, obj.labels)
        ]
        _write_rows(path, ("x", "y", "class"), rows)
    elif isinstance(obj, TrainHistory):
        rows = [
            (idx, repr(float(loss)), repr(float(lr)))
            for idx, loss, lr in zip(obj.checkpoints, obj.losses, obj.learning_rates)
        ]
        _write_rows(path, ("checkpoint", "loss", "lr"), rows)
    elif isinstance(obj, np.ndarray):
        cm = _check_matrix(obj)
        rows = [
            (i, j, int(cm[i, j]))
            for i in range(cm.shape[0])
            for j in range(cm.shape[1])
        ]
        _write_rows(path, ("true", "pred", "count"), rows)
    else:
        raise TypeError(f"no CSV schema for objects of type {type(obj).__name__}")


def read_confusion_csv(path) -> np.ndarray:
    """Inverse of export_plot_csv for confusion matrices."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != ["true", "pred", "count"]:
            raise ValueError(f"unexpected header {header}")
        triples = [(int(a), int(b), int(c)) for a, b, c in reader]
    k = max(max(t, p) for t, p, _ in triples) + 1 if triples else 0
    cm = np.zeros((k, k), dtype=np.int64)
    for t, p, c in triples:
        cm[t, p] = c
    return cm
