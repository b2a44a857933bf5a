"""BoAW codebook fitting and histogram encoding."""

import numpy as np
import pytest

from seq2vec.audio_features.boaw import (
    BoawCodebook,
    boaw_encode,
    fit_boaw_codebook,
    kmeans,
)
from seq2vec.audio_features.mfcc import FeatureSequence


def seq_of(frames):
    return FeatureSequence(frames=np.asarray(frames, dtype=np.float64))


class TestKmeans:
    def test_exact_fit_with_k_equal_points(self):
        pts = np.array([[0.0, 0.0], [5.0, 5.0], [-5.0, 5.0]])
        cb = fit_boaw_codebook([seq_of(pts)], vocab_size=3, seed=0, assignments_per_frame=1)
        got = sorted(map(tuple, cb.centroids.tolist()))
        want = sorted(map(tuple, pts.tolist()))
        assert got == want

    def test_single_cluster_is_pooled_mean(self):
        rng = np.random.default_rng(0)
        pts = rng.normal(2.0, 1.0, size=(40, 3))
        cb = fit_boaw_codebook([seq_of(pts)], vocab_size=1, seed=0, assignments_per_frame=1)
        np.testing.assert_allclose(cb.centroids[0], pts.mean(axis=0), rtol=1e-12)

    def test_two_separated_blobs(self):
        """Centroids land within 0.1 of the true blob means."""
        rng = np.random.default_rng(1)
        mean_a, mean_b = np.array([4.0, 0.0]), np.array([-4.0, 0.0])
        pts = np.vstack(
            [rng.normal(0, 0.3, (200, 2)) + mean_a, rng.normal(0, 0.3, (200, 2)) + mean_b]
        )
        cb = fit_boaw_codebook([seq_of(pts)], vocab_size=2, seed=2, assignments_per_frame=1)
        dists = [
            min(np.linalg.norm(c - mean_a), np.linalg.norm(c - mean_b))
            for c in cb.centroids
        ]
        assert max(dists) < 0.1
        # one centroid per blob, not both on one
        sides = sorted(np.sign(cb.centroids[:, 0]))
        assert sides == [-1.0, 1.0]

    def test_objective_is_non_increasing(self):
        rng = np.random.default_rng(3)
        pts = rng.standard_normal((300, 4))
        _, objectives = kmeans(pts, 7, np.random.default_rng(0))
        assert len(objectives) >= 1
        for earlier, later in zip(objectives, objectives[1:]):
            assert later <= earlier * (1 + 1e-12) + 1e-12

    def test_deterministic_given_seed(self):
        rng = np.random.default_rng(4)
        seqs = [seq_of(rng.standard_normal((30, 5))) for _ in range(4)]
        a = fit_boaw_codebook(seqs, vocab_size=8, seed=9, assignments_per_frame=2)
        b = fit_boaw_codebook(seqs, vocab_size=8, seed=9, assignments_per_frame=2)
        assert np.array_equal(a.centroids, b.centroids)

    def test_too_few_frames(self):
        with pytest.raises(ValueError):
            fit_boaw_codebook([seq_of(np.zeros((3, 2)))], vocab_size=5, seed=0)


class TestEncode:
    def test_histogram_is_probability_vector(self):
        rng = np.random.default_rng(5)
        seqs = [seq_of(rng.standard_normal((25, 6))) for _ in range(6)]
        cb = fit_boaw_codebook(seqs, vocab_size=16, seed=1, assignments_per_frame=4)
        for q in seqs:
            hist = boaw_encode(q, cb)
            assert hist.shape == (16,)
            assert np.all(hist >= 0)
            assert abs(hist.sum() - 1.0) <= 1e-9

    def test_all_frames_on_one_word(self):
        cb = BoawCodebook(
            centroids=np.array([[0.0, 0.0], [100.0, 100.0]]), assignments_per_frame=1
        )
        hist = boaw_encode(seq_of(np.full((7, 2), 0.5)), cb)
        np.testing.assert_array_equal(hist, [1.0, 0.0])

    def test_multi_assignment_split(self):
        """One frame with a=2 of V=4 puts 0.5 on each of its two nearest words."""
        centroids = np.array([[0.0, 0.0], [1.0, 0.0], [50.0, 0.0], [80.0, 0.0]])
        cb = BoawCodebook(centroids=centroids, assignments_per_frame=2)
        hist = boaw_encode(seq_of([[0.4, 0.0]]), cb)
        assert sorted(hist.tolist()) == [0.0, 0.0, 0.5, 0.5]
        assert hist[0] == 0.5 and hist[1] == 0.5

    def test_dimension_mismatch(self):
        cb = BoawCodebook(centroids=np.zeros((3, 4)), assignments_per_frame=1)
        with pytest.raises(ValueError):
            boaw_encode(seq_of(np.zeros((2, 5))), cb)
