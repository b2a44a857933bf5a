"""WAV decoding: scaling identities, error taxonomy, round trips."""

import struct

import numpy as np
import pytest

from seq2vec.audio_features.wav_io import (
    AudioClip,
    decode_wav,
    encode_wav,
    encode_wav_pcm16,
)
from seq2vec.errors import (
    MalformedWavError,
    UnsupportedBitDepthError,
    UnsupportedChannelsError,
    UnsupportedEncodingError,
    UnsupportedSampleRateError,
)


def make_wav(pcm, rate=16000, channels=1, bits=16, fmt=1):
    payload = np.asarray(pcm, dtype="<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        fmt,
        channels,
        rate,
        rate * channels * bits // 8,
        channels * bits // 8,
        bits,
        b"data",
        len(payload),
    )
    return header + payload


class TestDecode:
    def test_one_second_at_16k_has_16000_samples(self):
        clip = decode_wav(make_wav(np.zeros(16000, dtype=np.int16)))
        assert clip.num_samples == 16000
        assert clip.sample_rate == 16000
        assert clip.duration == pytest.approx(1.0)

    def test_all_zero_payload_decodes_to_zeros(self):
        clip = decode_wav(make_wav(np.zeros(100, dtype=np.int16)))
        assert np.all(clip.samples == 0.0)

    def test_pcm_scaling_identities(self):
        clip = decode_wav(make_wav([-32768, 16384, 0, 32767]))
        assert clip.samples[0] == -1.0
        assert clip.samples[1] == 0.5
        assert clip.samples[2] == 0.0
        assert clip.samples[3] == pytest.approx(32767 / 32768)

    def test_samples_stay_inside_unit_interval(self):
        rng = np.random.default_rng(0)
        pcm = rng.integers(-32768, 32768, size=5000).astype(np.int16)
        clip = decode_wav(make_wav(pcm))
        assert clip.samples.min() >= -1.0
        assert clip.samples.max() < 1.0


class TestErrors:
    def test_malformed_header(self):
        with pytest.raises(MalformedWavError):
            decode_wav(b"not a wav file at all")

    def test_truncated_data_chunk(self):
        data = make_wav(np.zeros(100, dtype=np.int16))
        with pytest.raises(MalformedWavError):
            decode_wav(data[:-10])

    def test_missing_data_chunk(self):
        data = make_wav(np.zeros(4, dtype=np.int16))[:44]  # header + fmt only
        truncated = data[:36]  # cut before the data chunk header
        with pytest.raises(MalformedWavError):
            decode_wav(truncated)

    def test_non_pcm_encoding(self):
        with pytest.raises(UnsupportedEncodingError):
            decode_wav(make_wav(np.zeros(4, dtype=np.int16), fmt=3))

    def test_stereo_rejected(self):
        with pytest.raises(UnsupportedChannelsError):
            decode_wav(make_wav(np.zeros(4, dtype=np.int16), channels=2))

    def test_wrong_bit_depth(self):
        with pytest.raises(UnsupportedBitDepthError):
            decode_wav(make_wav(np.zeros(4, dtype=np.int16), bits=8))

    def test_empty_payload(self):
        with pytest.raises(MalformedWavError):
            decode_wav(make_wav(np.zeros(0, dtype=np.int16)))

    def test_foreign_rate_needs_flag(self):
        data = make_wav(np.zeros(100, dtype=np.int16), rate=44100)
        with pytest.raises(UnsupportedSampleRateError):
            decode_wav(data)
        clip = decode_wav(data, allow_any_rate=True)
        assert clip.sample_rate == 44100


class TestRoundTrip:
    def test_pcm16_round_trip_is_exact(self):
        rng = np.random.default_rng(1)
        pcm = rng.integers(-32768, 32768, size=777).astype(np.int16)
        clip = decode_wav(encode_wav_pcm16(pcm, 16000))
        back = np.rint(clip.samples * 32768.0).astype(np.int16)
        assert np.array_equal(back, pcm)

    def test_encode_decode_float_round_trip(self):
        rng = np.random.default_rng(2)
        samples = rng.uniform(-0.9, 0.9, size=500)
        clip = AudioClip(samples=samples, sample_rate=16000)
        decoded = decode_wav(encode_wav(clip))
        assert np.max(np.abs(decoded.samples - samples)) <= 0.5 / 32768.0

    def test_clip_invariants(self):
        with pytest.raises(ValueError):
            AudioClip(samples=np.array([]), sample_rate=16000)
        with pytest.raises(ValueError):
            AudioClip(samples=np.zeros(10), sample_rate=0)
