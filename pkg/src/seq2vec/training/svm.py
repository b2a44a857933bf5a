"""One-vs-rest linear SVMs trained by dual coordinate descent.

The bias is folded into the weight vector through a constant augmented
feature, so each binary problem is the box-constrained dual of

    0.5 * (||w||^2 + b^2) + C * sum_i max(0, 1 - y_i (w.x_i + b)).

`svm_objective` reports that same objective rescaled by 1 / (n C), i.e.
mean hinge loss plus (||w||^2 + b^2) / (2 n C), which shares the minimizer
and keeps values O(1) across the complexity grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

COMPLEXITY_GRID = (0.01, 0.02, 0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0)


@dataclass
class SvmModel:
    weights: np.ndarray  # (K, D)
    biases: np.ndarray  # (K,)
    complexity: float

    @property
    def num_classes(self) -> int:
        return int(self.weights.shape[0])

    def decision_values(self, reps: np.ndarray) -> np.ndarray:
        reps = np.atleast_2d(np.asarray(reps, dtype=np.float64))
        return reps @ self.weights.T + self.biases


def svm_objective(
    weights: np.ndarray, bias: float, x: np.ndarray, y: np.ndarray, complexity: float
) -> float:
    """Mean hinge loss plus (||w||^2 + b^2) / (2 n C) for one binary task."""
    margins = 1.0 - y * (x @ weights + bias)
    hinge = float(np.mean(np.maximum(margins, 0.0)))
    reg = (float(weights @ weights) + bias * bias) / (2.0 * x.shape[0] * complexity)
    return hinge + reg


def _train_binary(
    x_aug: np.ndarray,
    y: np.ndarray,
    complexity: float,
    max_epochs: int,
    tol: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Dual coordinate descent for one binary task on augmented features."""
    n = x_aug.shape[0]
    q_diag = np.sum(x_aug * x_aug, axis=1)
    alpha = np.zeros(n)
    w = np.zeros(x_aug.shape[1])
    for _ in range(max_epochs):
        worst = 0.0
        for i in rng.permutation(n):
            g = y[i] * (w @ x_aug[i]) - 1.0
            if alpha[i] <= 0.0:
                pg = min(g, 0.0)
            elif alpha[i] >= complexity:
                pg = max(g, 0.0)
            else:
                pg = g
            worst = max(worst, abs(pg))
            if pg != 0.0:
                new_alpha = min(max(alpha[i] - g / q_diag[i], 0.0), complexity)
                w += (new_alpha - alpha[i]) * y[i] * x_aug[i]
                alpha[i] = new_alpha
        if worst < tol:
            break
    return w


def train_svm(
    representations: np.ndarray,
    labels: np.ndarray,
    complexity: float,
    num_classes: int | None = None,
    max_epochs: int = 5000,
    tol: float = 1e-10,
    seed: int = 0,
) -> SvmModel:
    """Fit one linear one-vs-rest SVM per class."""
    if complexity <= 0:
        raise ValueError("complexity C must be positive")
    reps = np.asarray(representations, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if reps.ndim != 2 or reps.shape[0] != labels.shape[0]:
        raise ValueError("representations must be (N, D) with one label per row")
    k = int(labels.max()) + 1 if num_classes is None else num_classes
    if len(np.unique(labels)) < 2:
        raise ValueError("need instances of at least two classes")
    x_aug = np.hstack([reps, np.ones((reps.shape[0], 1))])
    weights = np.empty((k, reps.shape[1]))
    biases = np.empty(k)
    for class_id in range(k):
        y = np.where(labels == class_id, 1.0, -1.0)
        # fresh generator per class keeps results independent of class order
        class_rng = np.random.default_rng(seed + class_id)
        w = _train_binary(x_aug, y, complexity, max_epochs, tol, class_rng)
        weights[class_id] = w[:-1]
        biases[class_id] = w[-1]
    return SvmModel(weights=weights, biases=biases, complexity=complexity)


def svm_predict(model: SvmModel, reps: np.ndarray) -> np.ndarray:
    """Argmax of decision values; ties resolve to the lowest class index."""
    values = model.decision_values(reps)
    return np.argmax(values, axis=1)


def select_complexity(
    train_reps: np.ndarray,
    train_labels: np.ndarray,
    val_reps: np.ndarray,
    val_labels: np.ndarray,
    num_classes: int,
    grid=COMPLEXITY_GRID,
    metric=None,
    seed: int = 0,
) -> tuple[float, SvmModel]:
    """Pick the grid complexity with the best validation score (ties: smaller C)."""
    if metric is None:
        def metric(truth, preds):
            return float(np.mean(truth == preds))

    best = None
    for c in grid:
        model = train_svm(train_reps, train_labels, c, num_classes=num_classes, seed=seed)
        score = metric(val_labels, svm_predict(model, val_reps))
        if best is None or score > best[0]:
            best = (score, c, model)
    return best[1], best[2]
