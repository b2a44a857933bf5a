"""GRU cell and layer mechanics, analytic gradients, the checker itself."""

import numpy as np
import pytest

from seq2vec.gru_core.affine import affine_backward, affine_forward, init_affine
from seq2vec.gru_core.gradcheck import gradient_check
from seq2vec.gru_core.gru import (
    GruLayerParams,
    gru_backward,
    gru_cell_forward,
    gru_sequence_forward,
    init_gru_layer,
)


def random_layer(rng, m, n, spread=0.8):
    p = init_gru_layer(m, n, rng)
    for arr in p.arrays().values():
        arr += spread * rng.standard_normal(arr.shape)
    return p


def zero_layer(m, n):
    shapes = dict(
        w_xz=(n, m), w_xr=(n, m), w_xh=(n, m),
        w_hz=(n, n), w_hr=(n, n), w_hh=(n, n),
        b_z=(n,), b_r=(n,), b_h=(n,),
    )
    return GruLayerParams(**{k: np.zeros(s) for k, s in shapes.items()})


class TestCell:
    def test_saturated_low_update_gate_keeps_state(self):
        """With z forced to ~0 the state passes through unchanged."""
        rng = np.random.default_rng(0)
        p = random_layer(rng, 3, 4)
        p.b_z[:] = -50.0
        h_prev = rng.standard_normal(4)
        h, _ = gru_cell_forward(rng.standard_normal(3), h_prev, p)
        np.testing.assert_allclose(h, h_prev, rtol=0, atol=1e-9)

    def test_saturated_high_update_gate_overwrites_state(self):
        """With z forced to ~1 the state becomes the candidate activation."""
        rng = np.random.default_rng(1)
        p = random_layer(rng, 3, 4)
        p.b_z[:] = 50.0
        x = rng.standard_normal(3)
        h_prev = rng.standard_normal(4)
        h, cache = gru_cell_forward(x, h_prev, p)
        expected = np.tanh(p.w_xh @ x + p.w_hh @ (cache.r * h_prev) + p.b_h)
        np.testing.assert_allclose(h, expected, rtol=0, atol=1e-9)

    def test_all_zero_parameters_halve_the_state(self):
        """sigmoid(0) = 0.5 and tanh(0) = 0 make the update h = 0.5 * h_prev."""
        p = zero_layer(2, 3)
        h0 = np.array([1.0, -2.0, 0.5])
        h, cache = gru_cell_forward(np.array([7.0, -1.0]), h0, p)
        np.testing.assert_array_equal(cache.z, np.full(3, 0.5))
        np.testing.assert_array_equal(cache.r, np.full(3, 0.5))
        np.testing.assert_array_equal(cache.cand, np.zeros(3))
        np.testing.assert_allclose(h, 0.5 * h0, rtol=1e-15)

    def test_gate_ranges_are_strict(self):
        # magnitudes kept below float64 sigmoid/tanh saturation (~36)
        rng = np.random.default_rng(2)
        for _ in range(25):
            p = random_layer(rng, 4, 5, spread=1.0)
            _, cache = gru_cell_forward(
                1.5 * rng.standard_normal(4), 1.5 * rng.standard_normal(5), p
            )
            assert np.all(cache.z > 0) and np.all(cache.z < 1)
            assert np.all(cache.r > 0) and np.all(cache.r < 1)
            assert np.all(cache.cand > -1) and np.all(cache.cand < 1)

    def test_shape_and_finiteness_errors(self):
        p = zero_layer(2, 3)
        with pytest.raises(ValueError):
            gru_cell_forward(np.zeros(5), np.zeros(3), p)
        with pytest.raises(ValueError):
            gru_cell_forward(np.zeros(2), np.zeros(4), p)
        with pytest.raises(ValueError):
            gru_cell_forward(np.array([np.nan, 0.0]), np.zeros(3), p)


class TestSequence:
    def test_single_step_equals_cell(self):
        rng = np.random.default_rng(3)
        p = random_layer(rng, 3, 4)
        x = rng.standard_normal((1, 3))
        h0 = rng.standard_normal(4)
        cell_h, _ = gru_cell_forward(x[0], h0, p)
        states, h_final, _ = gru_sequence_forward(x, np.array([True]), p, h0)
        np.testing.assert_array_equal(states[0], cell_h)
        np.testing.assert_array_equal(h_final, cell_h)

    def test_padding_invariance_is_bitwise(self):
        rng = np.random.default_rng(4)
        p = random_layer(rng, 3, 5)
        x = rng.standard_normal((6, 3))
        _, h_plain, _ = gru_sequence_forward(x, np.ones(6, dtype=bool), p)
        padded = np.vstack([x, rng.standard_normal((5, 3))])
        mask = np.array([True] * 6 + [False] * 5)
        _, h_padded, _ = gru_sequence_forward(padded, mask, p)
        assert np.array_equal(h_plain, h_padded)

    def test_all_masked_returns_initial_state(self):
        rng = np.random.default_rng(5)
        p = random_layer(rng, 2, 3)
        h0 = rng.standard_normal(3)
        _, h_final, _ = gru_sequence_forward(
            rng.standard_normal((4, 2)), np.zeros(4, dtype=bool), p, h0
        )
        np.testing.assert_array_equal(h_final, h0)

    def test_non_prefix_mask_rejected(self):
        p = zero_layer(2, 3)
        with pytest.raises(ValueError):
            gru_sequence_forward(
                np.zeros((3, 2)), np.array([True, False, True]), p
            )

    def test_deterministic(self):
        rng = np.random.default_rng(6)
        p = random_layer(rng, 3, 4)
        x = rng.standard_normal((5, 3))
        a = gru_sequence_forward(x, None, p)
        b = gru_sequence_forward(x, None, p)
        assert np.array_equal(a[0], b[0]) and np.array_equal(a[1], b[1])


def sequence_loss_setup(rng, m=2, n=3, length=4, masked_tail=0, spread=0.8):
    """Squared-error loss on all states plus the final state."""
    p = random_layer(rng, m, n, spread=spread)
    x = rng.standard_normal((length, m))
    mask = np.array([True] * (length - masked_tail) + [False] * masked_tail)
    state_targets = rng.standard_normal((length, n))
    final_target = rng.standard_normal(n)

    def forward():
        states, h_final, cache = gru_sequence_forward(x, mask, p)
        loss = 0.5 * float(np.sum((states - state_targets) ** 2))
        loss += 0.5 * float(np.sum((h_final - final_target) ** 2))
        return loss, states, h_final, cache

    return p, forward, state_targets, final_target


class TestBackward:
    def test_zero_upstream_gives_zero_gradients(self):
        rng = np.random.default_rng(7)
        p = random_layer(rng, 2, 3)
        _, _, cache = gru_sequence_forward(rng.standard_normal((4, 2)), None, p)
        grads, grad_x, grad_h0 = gru_backward(
            cache, p, np.zeros((4, 3)), np.zeros(3)
        )
        for arr in grads.arrays().values():
            assert np.all(arr == 0.0)
        assert np.all(grad_x == 0.0) and np.all(grad_h0 == 0.0)

    def test_gradients_match_finite_differences(self):
        """n=3, m=2, T=4 random instance against central differences."""
        rng = np.random.default_rng(8)
        p, forward, state_targets, final_target = sequence_loss_setup(rng)
        _, states, h_final, cache = forward()
        grads, _, _ = gru_backward(
            cache, p, states - state_targets, h_final - final_target
        )
        report = gradient_check(
            p.arrays(), lambda: forward()[0], grads.arrays(), delta=1e-5, tolerance=1e-6
        )
        assert report.passed, report.summary()

    def test_masked_steps_contribute_no_parameter_gradient(self):
        rng = np.random.default_rng(9)
        p, forward, state_targets, final_target = sequence_loss_setup(
            rng, length=5, masked_tail=2
        )
        _, states, h_final, cache = forward()
        grads, grad_x, _ = gru_backward(
            cache, p, states - state_targets, h_final - final_target
        )
        assert np.all(grad_x[3:] == 0.0)
        report = gradient_check(
            p.arrays(), lambda: forward()[0], grads.arrays(), delta=1e-5, tolerance=1e-6
        )
        assert report.passed, report.summary()

    def test_fully_masked_passes_final_gradient_to_h0(self):
        rng = np.random.default_rng(10)
        p = random_layer(rng, 2, 3)
        x = rng.standard_normal((4, 2))
        h0 = rng.standard_normal(3)
        _, _, cache = gru_sequence_forward(x, np.zeros(4, dtype=bool), p, h0)
        upstream = rng.standard_normal(3)
        grads, _, grad_h0 = gru_backward(cache, p, None, upstream)
        np.testing.assert_array_equal(grad_h0, upstream)
        for arr in grads.arrays().values():
            assert np.all(arr == 0.0)

    def test_exactness_over_random_small_instances(self):
        """Dims up to 8, T up to 6. Widths >= 2 and moderate weights keep the
        finite-difference oracle itself out of its round-off floor."""
        rng = np.random.default_rng(11)
        for _ in range(6):
            m = int(rng.integers(2, 9))
            n = int(rng.integers(2, 9))
            length = int(rng.integers(1, 7))
            tail = int(rng.integers(0, min(length, 3)))
            p, forward, state_targets, final_target = sequence_loss_setup(
                rng, m=m, n=n, length=length, masked_tail=tail, spread=0.4
            )
            _, states, h_final, cache = forward()
            grads, _, _ = gru_backward(
                cache, p, states - state_targets, h_final - final_target
            )
            report = gradient_check(
                p.arrays(), lambda: forward()[0], grads.arrays(), tolerance=1e-5
            )
            assert report.passed, report.summary()


class TestAffine:
    def test_identity_map(self):
        p = init_affine(3, 3, np.random.default_rng(0))
        p.w[...] = np.eye(3)
        p.b[...] = 0.0
        x = np.array([1.0, -2.0, 3.0])
        np.testing.assert_array_equal(affine_forward(x, p), x)

    def test_zero_input_returns_bias(self):
        rng = np.random.default_rng(1)
        p = init_affine(4, 2, rng)
        p.b[...] = rng.standard_normal(2)
        np.testing.assert_array_equal(affine_forward(np.zeros(4), p), p.b)

    def test_gradients_match_finite_differences(self):
        """Random 5x7 instance; affine gradients are exact to ~1e-8."""
        rng = np.random.default_rng(2)
        p = init_affine(7, 5, rng)
        x = rng.standard_normal(7)
        target = rng.standard_normal(5)

        def loss():
            diff = affine_forward(x, p) - target
            return 0.5 * float(np.sum(diff * diff))

        grads, _ = affine_backward(x, p, affine_forward(x, p) - target)
        report = gradient_check(
            {"w": p.w, "b": p.b}, loss, {"w": grads.w, "b": grads.b},
            delta=1e-5, tolerance=1e-8,
        )
        assert report.passed, report.summary()

    def test_shape_mismatch(self):
        p = init_affine(3, 2, np.random.default_rng(3))
        with pytest.raises(ValueError):
            affine_forward(np.zeros(4), p)


class TestGradientChecker:
    def test_quadratic_is_essentially_exact(self):
        rng = np.random.default_rng(4)
        w = rng.standard_normal((3, 3))

        def loss():
            return 0.5 * float(np.sum(w * w))

        report = gradient_check({"w": w}, loss, {"w": w.copy()}, tolerance=1e-9)
        assert report.passed
        assert report.max_relative_error < 1e-9

    def test_corrupted_gradient_is_caught(self):
        """Doubling one analytic entry must fail the check."""
        rng = np.random.default_rng(5)
        w = rng.standard_normal((2, 2)) + 1.0

        def loss():
            return 0.5 * float(np.sum(w * w))

        bad = w.copy()
        bad[0, 0] *= 2.0
        report = gradient_check({"w": w}, loss, {"w": bad}, tolerance=1e-5)
        assert not report.passed
