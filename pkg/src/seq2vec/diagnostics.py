"""Standard gradient-check battery over randomly built small models."""

from __future__ import annotations

import numpy as np

from .gru_core.affine import affine_backward, affine_forward, init_affine
from .gru_core.gradcheck import GradientCheckReport, gradient_check
from .gru_core.gru import gru_layer_backward, gru_layer_forward, init_gru_layer
from .seq2seq import autoencoder_backward, autoencoder_forward, init_encoder_decoder
from .training.classifier import classifier_loss_and_grads, init_gru_classifier


def check_affine(rng: np.random.Generator, delta=1e-5, tolerance=1e-5) -> GradientCheckReport:
    """Squared-error loss through a random affine map."""
    p = init_affine(7, 5, rng)
    x = rng.standard_normal(7)
    target = rng.standard_normal(5)

    def loss():
        out = affine_forward(x, p)
        return 0.5 * float(np.sum((out - target) ** 2))

    grads, _ = affine_backward(x, p, affine_forward(x, p) - target)
    params = {"w": p.w, "b": p.b}
    analytic = {"w": grads.w, "b": grads.b}
    return gradient_check(params, loss, analytic, delta=delta, tolerance=tolerance)


def check_gru_sequence(
    rng: np.random.Generator,
    input_dim=2,
    hidden=3,
    length=4,
    masked_tail=1,
    delta=1e-5,
    tolerance=1e-5,
) -> GradientCheckReport:
    """Squared hidden-state loss through one GRU layer with trailing padding."""
    p = init_gru_layer(input_dim, hidden, rng)
    # start from non-trivial weights so gate derivatives are exercised
    for arr in p.arrays().values():
        arr += 0.1 * rng.standard_normal(arr.shape)
    x = rng.standard_normal((1, length, input_dim))
    mask = np.ones((1, length), dtype=bool)
    if masked_tail:
        mask[0, length - masked_tail :] = False
    state_targets = rng.standard_normal((1, length, hidden))
    final_target = rng.standard_normal((1, hidden))

    def run():
        states, h_final, cache = gru_layer_forward(x, mask, p)
        loss = 0.5 * float(np.sum((states - state_targets) ** 2))
        loss += 0.5 * float(np.sum((h_final - final_target) ** 2))
        return loss, states, h_final, cache

    def loss():
        return run()[0]

    _, states, h_final, cache = run()
    grads, _, _ = gru_layer_backward(
        cache, p, grad_states=states - state_targets, grad_h_final=h_final - final_target
    )
    return gradient_check(p.arrays(), loss, grads.arrays(), delta=delta, tolerance=tolerance)


def check_autoencoder(
    rng: np.random.Generator,
    feature_dim=3,
    hidden=4,
    layers=2,
    length=5,
    batch=2,
    delta=1e-5,
    tolerance=1e-5,
) -> GradientCheckReport:
    """Masked reconstruction loss through the full encoder-decoder."""
    model = init_encoder_decoder(feature_dim, hidden, layers, rng)
    data = rng.standard_normal((batch, length, feature_dim))
    lengths = rng.integers(1, length + 1, size=batch)
    lengths[0] = length
    mask = np.arange(length)[None, :] < lengths[:, None]

    def loss():
        return autoencoder_forward(model, data, mask)[0]

    _, cache = autoencoder_forward(model, data, mask)
    grads = autoencoder_backward(model, cache)
    return gradient_check(model.parameters(), loss, grads, delta=delta, tolerance=tolerance)


def check_classifier(
    rng: np.random.Generator,
    input_dim=6,
    hidden=4,
    num_classes=3,
    batch=5,
    delta=1e-5,
    tolerance=1e-5,
) -> GradientCheckReport:
    """Cross-entropy loss through the single-step GRU classifier."""
    model = init_gru_classifier(input_dim, hidden, num_classes, rng)
    reps = rng.standard_normal((batch, input_dim))
    labels = rng.integers(0, num_classes, size=batch)

    def loss():
        return classifier_loss_and_grads(model, reps, labels)[0]

    _, grads = classifier_loss_and_grads(model, reps, labels)
    return gradient_check(model.parameters(), loss, grads, delta=delta, tolerance=tolerance)


def run_battery(seed: int = 0, delta: float = 1e-5, tolerance: float = 1e-5):
    """All checks; returns a list of (name, GradientCheckReport)."""
    rng = np.random.default_rng(seed)
    return [
        ("affine", check_affine(rng, delta, tolerance)),
        ("gru-sequence", check_gru_sequence(rng, delta=delta, tolerance=tolerance)),
        ("autoencoder", check_autoencoder(rng, delta=delta, tolerance=tolerance)),
        ("gru-classifier", check_classifier(rng, delta=delta, tolerance=tolerance)),
    ]
