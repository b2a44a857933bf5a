"""Versioned binary container for trained models.

Layout (all integers little-endian):

    magic   b"S2VM"
    major   u16     (compatibility gate; loading a newer major fails)
    minor   u16
    meta_len u32, meta: canonical JSON (kind, shape metadata, config echo)
    payload_len u64, payload: named array sections
    checksum u64    FNV-1a over the payload bytes

Each payload section is: name_len u16, name utf-8, dtype_len u8, dtype
string, ndim u8, dims u64 each, data_len u64, raw C-order bytes. Round
trips are byte-lossless: save(load(save(x))) == save(x).
"""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..errors import ChecksumError, ContainerError, KindMismatchError, VersionError

MAGIC = b"S2VM"
FORMAT_MAJOR = 1
FORMAT_MINOR = 0

MODEL_KINDS = ("autoencoder", "gru-classifier", "svm", "codebook", "standardizer")

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_U64 = 0xFFFFFFFFFFFFFFFF


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h = ((h ^ b) * _FNV_PRIME) & _U64
    return h


@dataclass
class ModelContainer:
    kind: str
    arrays: dict[str, np.ndarray]
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in MODEL_KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}")


def _pack_section(name: str, arr: np.ndarray) -> bytes:
    arr = np.ascontiguousarray(arr)
    dtype = arr.dtype.str  # e.g. '<f8', includes byte order
    name_b = name.encode("utf-8")
    dtype_b = dtype.encode("ascii")
    parts = [
        struct.pack("<H", len(name_b)),
        name_b,
        struct.pack("<B", len(dtype_b)),
        dtype_b,
        struct.pack("<B", arr.ndim),
        struct.pack(f"<{arr.ndim}Q", *arr.shape) if arr.ndim else b"",
        struct.pack("<Q", arr.nbytes),
        arr.tobytes(),
    ]
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, count: int) -> bytes:
        if self.pos + count > len(self.data):
            raise ContainerError("container truncated")
        out = self.data[self.pos : self.pos + count]
        self.pos += count
        return out

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))


def save_model(container: ModelContainer) -> bytes:
    meta = {
        "kind": container.kind,
        "metadata": container.metadata,
        "array_order": list(container.arrays.keys()),
    }
    meta_b = json.dumps(meta, sort_keys=True, separators=(",", ":")).encode("utf-8")
    payload = b"".join(_pack_section(k, v) for k, v in container.arrays.items())
    head = MAGIC + struct.pack("<HHI", FORMAT_MAJOR, FORMAT_MINOR, len(meta_b))
    tail = struct.pack("<Q", len(payload)) + payload + struct.pack("<Q", fnv1a64(payload))
    return head + meta_b + tail


def load_model(data: bytes, expected_kind: str | None = None) -> ModelContainer:
    reader = _Reader(data)
    if reader.take(4) != MAGIC:
        raise ContainerError("bad magic, not a model container")
    major, _minor, meta_len = reader.unpack("<HHI")
    if major > FORMAT_MAJOR:
        raise VersionError(f"container format {major} is newer than supported {FORMAT_MAJOR}")
    try:
        meta = json.loads(reader.take(meta_len).decode("utf-8"))
        kind = meta["kind"]
        metadata = meta["metadata"]
        order = meta["array_order"]
    except (json.JSONDecodeError, KeyError, UnicodeDecodeError) as exc:
        raise ContainerError(f"bad metadata header: {exc}") from exc
    (payload_len,) = reader.unpack("<Q")
    payload = reader.take(payload_len)
    (stored,) = reader.unpack("<Q")
    actual = fnv1a64(payload)
    if stored != actual:
        raise ChecksumError(f"payload checksum {actual:#x} != stored {stored:#x}")
    if expected_kind is not None and kind != expected_kind:
        raise KindMismatchError(f"expected a {expected_kind} container, found {kind}")

    arrays: dict[str, np.ndarray] = {}
    section = _Reader(payload)
    while section.pos < len(payload):
        (name_len,) = section.unpack("<H")
        name = section.take(name_len).decode("utf-8")
        (dtype_len,) = section.unpack("<B")
        dtype = np.dtype(section.take(dtype_len).decode("ascii"))
        (ndim,) = section.unpack("<B")
        shape = section.unpack(f"<{ndim}Q") if ndim else ()
        (nbytes,) = section.unpack("<Q")
        arrays[name] = np.frombuffer(section.take(nbytes), dtype=dtype).reshape(shape).copy()
    if list(arrays.keys()) != order:
        raise ContainerError("payload sections do not match the declared order")
    return ModelContainer(kind=kind, arrays=arrays, metadata=metadata)


def write_model(path, container: ModelContainer) -> None:
    Path(path).write_bytes(save_model(container))


def read_model(path, expected_kind: str | None = None) -> ModelContainer:
    return load_model(Path(path).read_bytes(), expected_kind=expected_kind)
