"""Synthetic acoustic-event corpus: five archetype generators with jitter.

Each class is built from one archetype (pure tone, linear chirp, noise
bursts, amplitude-modulated tone, harmonic stack); classes beyond five
cycle through the archetypes with shifted parameter bands. Clips are
written as 16-bit mono WAV files, byte-identical for a fixed seed, and a
manifest partitions each class sequentially into train / test / validation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..audio_features.wav_io import DEFAULT_SAMPLE_RATE, encode_wav_pcm16
from .manifest import DatasetManifest, ManifestEntry

ARCHETYPE_NAMES = ("tone", "chirp", "noise-burst", "am-tone", "harmonic-stack")


@dataclass
class SynthConfig:
    num_classes: int = 5
    clips_per_class: int = 30
    duration_min: float = 0.5
    duration_max: float = 3.0
    sample_rate: int = DEFAULT_SAMPLE_RATE
    seed: int = 0

    def __post_init__(self):
        if self.num_classes < 2:
            raise ValueError("need at least two classes")
        if self.clips_per_class < 1:
            raise ValueError("need at least one clip per class")
        if not 0.1 <= self.duration_min <= self.duration_max <= 10.0:
            raise ValueError("duration range must satisfy 0.1 <= min <= max <= 10.0")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")


def _tone(t, rng):
    f0 = rng.uniform(200.0, 500.0)
    return np.sin(2 * np.pi * f0 * t)


def _chirp(t, rng):
    f0 = rng.uniform(100.0, 300.0)
    f1 = rng.uniform(1500.0, 3000.0)
    duration = t[-1] if t[-1] > 0 else 1.0
    sweep = (f1 - f0) / (2.0 * duration)
    return np.sin(2 * np.pi * (f0 * t + sweep * t * t))


def _noise_burst(t, rng):
    burst_rate = rng.uniform(2.0, 5.0)
    noise = rng.standard_normal(t.size)
    envelope = np.exp(-6.0 * ((t * burst_rate) % 1.0))
    return noise * envelope


def _am_tone(t, rng):
    carrier = rng.uniform(600.0, 1000.0)
    mod = rng.uniform(4.0, 8.0)
    return np.sin(2 * np.pi * carrier * t) * (0.5 + 0.5 * np.sin(2 * np.pi * mod * t))


def _harmonic_stack(t, rng):
    f0 = rng.uniform(120.0, 240.0)
    out = np.zeros_like(t)
    for k in range(1, 7):
        out += np.sin(2 * np.pi * k * f0 * t) / k
    return out


_GENERATORS = (_tone, _chirp, _noise_burst, _am_tone, _harmonic_stack)


def class_name(class_id: int) -> str:
    base = ARCHETYPE_NAMES[class_id % len(_GENERATORS)]
    band = class_id // len(_GENERATORS)
    return base if band == 0 else f"{base}-{band}"


def synth_clip(class_id: int, duration: float, sample_rate: int, rng) -> np.ndarray:
    """One int16 clip of the class archetype with per-clip parameter jitter."""
    generator = _GENERATORS[class_id % len(_GENERATORS)]
    num_samples = max(int(round(duration * sample_rate)), 1)
    t = np.arange(num_samples) / sample_rate
    # higher bands shift pitch-like parameters by compressing time
    band = class_id // len(_GENERATORS)
    wave = generator(t * (1.0 + 0.35 * band), rng)
    peak = np.max(np.abs(wave))
    if peak > 0:
        wave = wave / peak
    amplitude = rng.uniform(0.3, 0.8)
    return np.clip(np.rint(wave * amplitude * 32767.0), -32768, 32767).astype("<i2")


def _split_for(index: int, per_class: int) -> str:
    # sequential thirds per class: train, then test, then validation
    train_end = math.ceil(per_class / 3)
    test_end = math.ceil(2 * per_class / 3)
    if index < train_end:
        return "train"
    if index < test_end:
        return "test"
    return "validation"


def synth_generate(cfg: SynthConfig, out_dir) -> DatasetManifest:
    """Write the corpus WAVs plus manifest.json into out_dir."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(cfg.seed)
    entries: list[ManifestEntry] = []
    names = [class_name(c) for c in range(cfg.num_classes)]
    for c in range(cfg.num_classes):
        for i in range(cfg.clips_per_class):
            duration = rng.uniform(cfg.duration_min, cfg.duration_max)
            pcm = synth_clip(c, duration, cfg.sample_rate, rng)
            rel = f"{names[c]}_{i:03d}.wav"
            (out / rel).write_bytes(encode_wav_pcm16(pcm, cfg.sample_rate))
            entries.append(
                ManifestEntry(
                    path=rel,
                    category_id=c,
                    class_id=c,
                    split=_split_for(i, cfg.clips_per_class),
                )
            )
    manifest = DatasetManifest(
        entries=entries, category_names=names, class_names=names, root=out
    )
    manifest.validate()
    manifest.save(out / "manifest.json")
    return manifest
