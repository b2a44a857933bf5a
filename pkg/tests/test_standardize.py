"""Standardizer: population statistics, flooring, round trips."""

import numpy as np
import pytest

from seq2vec.audio_features.mfcc import FeatureSequence
from seq2vec.audio_features.standardize import (
    STD_FLOOR,
    Standardizer,
    apply_standardizer,
    fit_standardizer,
    invert_standardizer,
)


def seq_of(frames):
    return FeatureSequence(frames=np.asarray(frames, dtype=np.float64))


class TestFit:
    def test_two_point_statistics(self):
        """Frames of all-0 and all-2: mean 1, population std 1 per dimension."""
        s = fit_standardizer([seq_of(np.zeros((1, 4))), seq_of(np.full((1, 4), 2.0))])
        np.testing.assert_array_equal(s.mean, np.ones(4))
        np.testing.assert_array_equal(s.std, np.ones(4))

    def test_constant_corpus_floors_std(self):
        s = fit_standardizer([seq_of(np.full((10, 3), 5.0))])
        np.testing.assert_array_equal(s.mean, np.full(3, 5.0))
        np.testing.assert_array_equal(s.std, np.full(3, STD_FLOOR))

    def test_insufficient_frames(self):
        with pytest.raises(ValueError):
            fit_standardizer([seq_of(np.zeros((1, 3)))])
        with pytest.raises(ValueError):
            fit_standardizer([])

    def test_transform_recenters_random_corpus(self):
        """After standardization the pooled stats are 0 and 1 to round-off."""
        rng = np.random.default_rng(0)
        seqs = []
        remaining = 1000
        while remaining > 0:
            t = min(int(rng.integers(5, 50)), remaining)
            seqs.append(seq_of(rng.normal(3.0, 2.5, size=(t, 13))))
            remaining -= t
        s = fit_standardizer(seqs)
        pooled = np.concatenate([apply_standardizer(q, s).frames for q in seqs])
        assert np.max(np.abs(pooled.mean(axis=0))) < 1e-10
        assert np.max(np.abs(pooled.std(axis=0) - 1.0)) < 1e-10


class TestApply:
    def test_frame_equal_to_mean_maps_to_zero(self):
        s = Standardizer(mean=np.array([1.0, -2.0]), std=np.array([3.0, 4.0]))
        out = apply_standardizer(seq_of([[1.0, -2.0]]), s)
        np.testing.assert_array_equal(out.frames, np.zeros((1, 2)))

    def test_identity_standardizer(self):
        s = Standardizer(mean=np.zeros(3), std=np.ones(3))
        frames = np.arange(6.0).reshape(2, 3)
        out = apply_standardizer(seq_of(frames), s)
        np.testing.assert_array_equal(out.frames, frames)

    def test_mean_plus_std_maps_to_ones(self):
        s = Standardizer(mean=np.array([1.0, 2.0]), std=np.array([0.5, 4.0]))
        out = apply_standardizer(seq_of([(s.mean + s.std).tolist()]), s)
        np.testing.assert_allclose(out.frames, np.ones((1, 2)), rtol=0, atol=1e-15)

    def test_dimension_mismatch(self):
        s = Standardizer(mean=np.zeros(3), std=np.ones(3))
        with pytest.raises(ValueError):
            apply_standardizer(seq_of(np.zeros((2, 4))), s)

    def test_round_trip_within_relative_tolerance(self):
        rng = np.random.default_rng(1)
        seqs = [seq_of(rng.normal(-4.0, 7.0, size=(30, 13))) for _ in range(5)]
        s = fit_standardizer(seqs)
        for q in seqs:
            back = invert_standardizer(apply_standardizer(q, s), s)
            np.testing.assert_allclose(back.frames, q.frames, rtol=1e-9, atol=1e-12)
