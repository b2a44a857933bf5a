"""Decoding and encoding of 16-bit mono PCM RIFF/WAVE byte streams."""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from ..errors import (
    MalformedWavError,
    UnsupportedBitDepthError,
    UnsupportedChannelsError,
    UnsupportedEncodingError,
    UnsupportedSampleRateError,
)

DEFAULT_SAMPLE_RATE = 16_000

# int16 full scale; -32768 maps to -1.0, +16384 to 0.5
_PCM_SCALE = 32768.0

_FORMAT_PCM = 1


@dataclass(frozen=True)
class AudioClip:
    """Mono audio: float64 samples in [-1, 1) plus the sample rate in Hz."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self):
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise ValueError("AudioClip requires a non-empty 1-D sample array")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")

    @property
    def num_samples(self) -> int:
        return int(self.samples.size)

    @property
    def duration(self) -> float:
        return self.samples.size / self.sample_rate


def _find_chunks(data: bytes) -> dict[bytes, bytes]:
    """Walk the RIFF chunk list and return {chunk id: chunk body}."""
    if len(data) < 12:
        raise MalformedWavError("file too short for a RIFF header")
    if data[0:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedWavError("missing RIFF/WAVE signature")
    chunks: dict[bytes, bytes] = {}
    pos = 12
    while pos + 8 <= len(data):
        cid = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + size]
        if len(body) < size:
            raise MalformedWavError(f"chunk {cid!r} truncated ({len(body)} of {size} bytes)")
        if cid not in chunks:
            chunks[cid] = body
        # chunk bodies are padded to even length
        pos += 8 + size + (size & 1)
    return chunks


def decode_wav(data: bytes, allow_any_rate: bool = False) -> AudioClip:
    """Decode a PCM16 mono WAV byte stream into an AudioClip.

    Rates other than 16 kHz are rejected unless allow_any_rate is set.
    """
    chunks = _find_chunks(data)
    fmt = chunks.get(b"fmt ")
    if fmt is None or len(fmt) < 16:
        raise MalformedWavError("missing or short fmt chunk")
    audio_format, channels, rate, _byte_rate, _block_align, bits = struct.unpack_from(
        "<HHIIHH", fmt, 0
    )
    if audio_format != _FORMAT_PCM:
        raise UnsupportedEncodingError(f"format tag {audio_format}, only linear PCM supported")
    if channels != 1:
        raise UnsupportedChannelsError(f"{channels} channels, only mono supported")
    if bits != 16:
        raise UnsupportedBitDepthError(f"{bits}-bit samples, only 16-bit supported")
    if rate != DEFAULT_SAMPLE_RATE and not allow_any_rate:
        raise UnsupportedSampleRateError(
            f"sample rate {rate} Hz, expected {DEFAULT_SAMPLE_RATE} Hz"
        )
    payload = chunks.get(b"data")
    if payload is None:
        raise MalformedWavError("missing data chunk")
    if len(payload) % 2 != 0:
        raise MalformedWavError("data chunk length is odd, not 16-bit aligned")
    if len(payload) == 0:
        raise MalformedWavError("data chunk holds no samples")
    raw = np.frombuffer(payload, dtype="<i2")
    samples = raw.astype(np.float64) / _PCM_SCALE
    return AudioClip(samples=samples, sample_rate=int(rate))


def encode_wav(clip: AudioClip) -> bytes:
    """Encode an AudioClip as a canonical 44-byte-header PCM16 mono WAV."""
    pcm = np.clip(np.rint(clip.samples * _PCM_SCALE), -32768, 32767).astype("<i2")
    return encode_wav_pcm16(pcm, clip.sample_rate)


def encode_wav_pcm16(pcm: np.ndarray, sample_rate: int) -> bytes:
    """Encode raw int16 samples without any rescaling."""
    if pcm.dtype != np.dtype("<i2"):
        pcm = pcm.astype("<i2")
    payload = pcm.tobytes()
    byte_rate = sample_rate * 2
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(payload),
        b"WAVE",
        b"fmt ",
        16,
        _FORMAT_PCM,
        1,
        sample_rate,
        byte_rate,
        2,
        16,
        b"data",
        len(payload),
    )
    return header + payload


def read_wav(path, allow_any_rate: bool = False) -> AudioClip:
    with open(path, "rb") as fh:
        return decode_wav(fh.read(), allow_any_rate=allow_any_rate)


def write_wav(path, clip: AudioClip) -> None:
    with open(path, "wb") as fh:
        fh.write(encode_wav(clip))
