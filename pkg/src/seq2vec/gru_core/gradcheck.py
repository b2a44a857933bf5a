"""Central finite-difference verification of analytic gradients."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from ..errors import NumericError


@dataclass
class GradientCheckReport:
    tolerance: float
    delta: float
    per_parameter: dict[str, float] = field(default_factory=dict)

    @property
    def max_relative_error(self) -> float:
        return max(self.per_parameter.values()) if self.per_parameter else 0.0

    @property
    def passed(self) -> bool:
        return self.max_relative_error < self.tolerance

    def summary(self) -> str:
        lines = [
            f"{name}: max rel err {err:.3e}" for name, err in self.per_parameter.items()
        ]
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(
            f"{verdict}: overall max {self.max_relative_error:.3e} vs tolerance {self.tolerance:.1e}"
        )
        return "\n".join(lines)


def gradient_check(
    params: Mapping[str, np.ndarray],
    loss_fn: Callable[[], float],
    analytic: Mapping[str, np.ndarray],
    delta: float = 1e-5,
    tolerance: float = 1e-5,
) -> GradientCheckReport:
    """Compare analytic gradients against central differences of loss_fn.

    loss_fn takes no arguments and must read the arrays in `params`, which
    are perturbed in place one coordinate at a time. Relative error per
    coordinate is |ga - gn| / max(|ga|, |gn|, 1e-12).
    """
    report = GradientCheckReport(tolerance=tolerance, delta=delta)
    for name, values in params.items():
        grad = analytic[name]
        if grad.shape != values.shape:
            raise ValueError(f"gradient shape mismatch for {name}")
        worst = 0.0
        flat = values.reshape(-1)
        gflat = grad.reshape(-1)
        for i in range(flat.size):
            original = flat[i]
            flat[i] = original + delta
            loss_plus = loss_fn()
            flat[i] = original - delta
            loss_minus = loss_fn()
            flat[i] = original
            if not (np.isfinite(loss_plus) and np.isfinite(loss_minus)):
                raise NumericError(f"non-finite loss while perturbing {name}[{i}]")
            numeric = (loss_plus - loss_minus) / (2.0 * delta)
            ga = float(gflat[i])
            rel = abs(ga - numeric) / max(abs(ga), abs(numeric), 1e-12)
            worst = max(worst, rel)
        report.per_parameter[name] = worst
    return report
