"""MFCC extraction: one log-energy coefficient plus 12 cepstral coefficients.

Pipeline: pre-emphasis 0.97, non-overlapping-by-default framing with the
final partial frame zero-padded, Hamming window, power spectrum on the next
power-of-two FFT, 26 triangular mel filters from 0 to Nyquist, log with a
1e-10 floor, orthonormal DCT-II keeping cepstra 1..12.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.fft import dct

from .wav_io import AudioClip

NUM_COEFFS = 13
DEFAULT_WINDOW_MS = 60.0
DEFAULT_HOP_MS = 60.0
PREEMPHASIS = 0.97
NUM_MEL_FILTERS = 26
ENERGY_FLOOR = 1e-10


@dataclass(frozen=True)
class FeatureSequence:
    """A (T, d) matrix of per-frame feature vectors, T >= 1."""

    frames: np.ndarray

    def __post_init__(self):
        if self.frames.ndim != 2 or self.frames.shape[0] < 1:
            raise ValueError("FeatureSequence requires a (T, d) matrix with T >= 1")
        if not np.all(np.isfinite(self.frames)):
            raise ValueError("FeatureSequence entries must be finite")

    def __len__(self) -> int:
        return int(self.frames.shape[0])

    @property
    def frame_count(self) -> int:
        return int(self.frames.shape[0])

    @property
    def dim(self) -> int:
        return int(self.frames.shape[1])


def frame_count(num_samples: int, hop_samples: int) -> int:
    """T = ceil(num_samples / hop_samples)."""
    return -(-num_samples // hop_samples)


def _hz_to_mel(hz):
    return 2595.0 * np.log10(1.0 + np.asarray(hz) / 700.0)


def _mel_to_hz(mel):
    return 700.0 * (10.0 ** (np.asarray(mel) / 2595.0) - 1.0)


def mel_filterbank(num_filters: int, nfft: int, sample_rate: int) -> np.ndarray:
    """Triangular filters on a mel-spaced grid from 0 Hz to Nyquist.

    Returns a (num_filters, nfft // 2 + 1) weight matrix.
    """
    low_mel = _hz_to_mel(0.0)
    high_mel = _hz_to_mel(sample_rate / 2.0)
    mel_points = np.linspace(low_mel, high_mel, num_filters + 2)
    bins = np.floor((nfft + 1) * _mel_to_hz(mel_points) / sample_rate).astype(int)

    fbank = np.zeros((num_filters, nfft // 2 + 1))
    for j in range(num_filters):
        left, center, right = bins[j], bins[j + 1], bins[j + 2]
        for i in range(left, center):
            fbank[j, i] = (i - left) / max(center - left, 1)
        for i in range(center, right):
            fbank[j, i] = (right - i) / max(right - center, 1)
    return fbank


def extract_mfcc(
    clip: AudioClip,
    window_ms: float = DEFAULT_WINDOW_MS,
    hop_ms: float = DEFAULT_HOP_MS,
) -> FeatureSequence:
    """Extract a (T, 13) MFCC sequence; column 0 is log-energy.

    T = ceil(num_samples / hop_samples); the last frame is zero-padded.
    """
    if window_ms <= 0 or hop_ms <= 0:
        raise ValueError("window_ms and hop_ms must be positive")
    rate = clip.sample_rate
    win = int(round(rate * window_ms / 1000.0))
    hop = int(round(rate * hop_ms / 1000.0))
    if win < 1 or hop < 1:
        raise ValueError("window and hop must cover at least one sample")

    signal = clip.samples
    num_frames = frame_count(signal.size, hop)

    emphasized = np.empty_like(signal)
    emphasized[0] = signal[0]
    emphasized[1:] = signal[1:] - PREEMPHASIS * signal[:-1]

    padded_len = (num_frames - 1) * hop + win
    padded = np.zeros(padded_len)
    padded[: emphasized.size] = emphasized
    index = np.arange(win)[None, :] + hop * np.arange(num_frames)[:, None]
    frames = padded[index] * np.hamming(win)

    log_energy = np.log(np.sum(frames * frames, axis=1) + ENERGY_FLOOR)

    nfft = 1 << (win - 1).bit_length()
    power = np.abs(np.fft.rfft(frames, nfft)) ** 2 / nfft
    fbank = mel_filterbank(NUM_MEL_FILTERS, nfft, rate)
    filter_energies = np.maximum(power @ fbank.T, ENERGY_FLOOR)
    cepstra = dct(np.log(filter_energies), type=2, norm="ortho", axis=1)

    features = np.empty((num_frames, NUM_COEFFS))
    features[:, 0] = log_energy
    features[:, 1:] = cepstra[:, 1:NUM_COEFFS]
    return FeatureSequence(frames=features)
