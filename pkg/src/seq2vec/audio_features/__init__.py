"""Audio decoding, MFCC features, standardization, and the BoAW baseline."""

from .boaw import (
    DEFAULT_ASSIGNMENTS,
    DEFAULT_VOCAB_SIZE,
    BoawCodebook,
    boaw_encode,
    fit_boaw_codebook,
    kmeans,
)
from .mfcc import (
    DEFAULT_HOP_MS,
    DEFAULT_WINDOW_MS,
    ENERGY_FLOOR,
    NUM_COEFFS,
    FeatureSequence,
    extract_mfcc,
    frame_count,
)
from .standardize import (
    STD_FLOOR,
    Standardizer,
    apply_standardizer,
    fit_standardizer,
    invert_standardizer,
)
from .wav_io import (
    DEFAULT_SAMPLE_RATE,
    AudioClip,
    decode_wav,
    encode_wav,
    encode_wav_pcm16,
    read_wav,
    write_wav,
)

__all__ = [
    "AudioClip",
    "BoawCodebook",
    "DEFAULT_ASSIGNMENTS",
    "DEFAULT_HOP_MS",
    "DEFAULT_SAMPLE_RATE",
    "DEFAULT_VOCAB_SIZE",
    "DEFAULT_WINDOW_MS",
    "ENERGY_FLOOR",
    "FeatureSequence",
    "NUM_COEFFS",
    "STD_FLOOR",
    "Standardizer",
    "apply_standardizer",
    "boaw_encode",
    "decode_wav",
    "encode_wav",
    "encode_wav_pcm16",
    "extract_mfcc",
    "fit_boaw_codebook",
    "fit_standardizer",
    "frame_count",
    "invert_standardizer",
    "kmeans",
    "read_wav",
    "write_wav",
]
