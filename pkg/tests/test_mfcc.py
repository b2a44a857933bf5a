"""MFCC extraction: frame-count law, energy floor, determinism."""

import numpy as np

from seq2vec.audio_features.mfcc import (
    ENERGY_FLOOR,
    NUM_COEFFS,
    extract_mfcc,
    frame_count,
)
from seq2vec.audio_features.wav_io import AudioClip, decode_wav, encode_wav


def clip_of(samples, rate=16000):
    return AudioClip(samples=np.asarray(samples, dtype=np.float64), sample_rate=rate)


class TestFrameCount:
    def test_ten_seconds_gives_167_frames(self):
        """160000 samples / 960-sample hop = 166.67, rounded up to 167."""
        clip = clip_of(np.zeros(160000))
        feats = extract_mfcc(clip)
        assert feats.frame_count == 167

    def test_exactly_one_window(self):
        feats = extract_mfcc(clip_of(np.zeros(960)))
        assert feats.frame_count == 1

    def test_law_holds_for_random_lengths(self):
        rng = np.random.default_rng(0)
        for _ in range(50):
            n = int(rng.integers(1, 50000))
            feats = extract_mfcc(clip_of(rng.uniform(-0.5, 0.5, size=n)))
            assert feats.frame_count == frame_count(n, 960)
            assert feats.frame_count == -(-n // 960)

    def test_sub_hop_clip_yields_one_frame(self):
        feats = extract_mfcc(clip_of(np.zeros(10)))
        assert feats.frame_count == 1


class TestFeatureContent:
    def test_shape_and_finiteness(self):
        rng = np.random.default_rng(1)
        feats = extract_mfcc(clip_of(rng.uniform(-0.8, 0.8, size=20000)))
        assert feats.frames.shape == (feats.frame_count, NUM_COEFFS)
        assert np.all(np.isfinite(feats.frames))

    def test_silence_hits_the_energy_floor(self):
        """All-zero input leaves only the additive floor inside the log."""
        feats = extract_mfcc(clip_of(np.zeros(5000)))
        expected = np.log(ENERGY_FLOOR)
        assert np.all(feats.frames[:, 0] == expected)

    def test_louder_signal_has_higher_log_energy(self):
        rng = np.random.default_rng(2)
        base = rng.uniform(-0.1, 0.1, size=4800)
        quiet = extract_mfcc(clip_of(base))
        loud = extract_mfcc(clip_of(np.clip(base * 8, -1, 1)))
        assert np.all(loud.frames[:, 0] > quiet.frames[:, 0])

    def test_deterministic_from_bytes(self):
        rng = np.random.default_rng(3)
        clip = clip_of(rng.uniform(-0.5, 0.5, size=12345))
        data = encode_wav(clip)
        a = extract_mfcc(decode_wav(data))
        b = extract_mfcc(decode_wav(data))
        assert np.array_equal(a.frames, b.frames)

    def test_distinct_signals_give_distinct_cepstra(self):
        t = np.arange(16000) / 16000.0
        tone = extract_mfcc(clip_of(0.5 * np.sin(2 * np.pi * 440 * t)))
        rng = np.random.default_rng(4)
        noise = extract_mfcc(clip_of(rng.uniform(-0.5, 0.5, size=16000)))
        assert not np.allclose(tone.frames[:, 1:], noise.frames[:, 1:])
