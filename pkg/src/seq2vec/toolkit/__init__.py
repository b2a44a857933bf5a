"""CLI, manifests, synthetic data, and model persistence."""

from .config import apply_config, load_config, parse_config
from .container import (
    FORMAT_MAJOR,
    MODEL_KINDS,
    ModelContainer,
    fnv1a64,
    load_model,
    read_model,
    save_model,
    write_model,
)
from .features_store import (
    THREADS_ENV,
    load_feature_set,
    parallel_map,
    save_feature_set,
    worker_count,
)
from .manifest import SPLITS, DatasetManifest, ManifestEntry
from .synth import ARCHETYPE_NAMES, SynthConfig, synth_generate
from .tables import (
    read_predictions,
    read_representations,
    write_predictions,
    write_representations,
)

__all__ = [
    "ARCHETYPE_NAMES",
    "DatasetManifest",
    "FORMAT_MAJOR",
    "MODEL_KINDS",
    "ManifestEntry",
    "ModelContainer",
    "SPLITS",
    "SynthConfig",
    "THREADS_ENV",
    "apply_config",
    "fnv1a64",
    "load_config",
    "load_feature_set",
    "load_model",
    "parallel_map",
    "parse_config",
    "read_model",
    "read_predictions",
    "read_representations",
    "save_feature_set",
    "save_model",
    "synth_generate",
    "worker_count",
    "write_model",
    "write_predictions",
    "write_representations",
]
