"""Dataset manifests: which clip belongs to which class and split."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import DataError

SPLITS = ("train", "test", "validation")


@dataclass(frozen=True)
class ManifestEntry:
    path: str
    category_id: int
    class_id: int
    split: str


@dataclass
class DatasetManifest:
    entries: list[ManifestEntry]
    category_names: list[str]
    class_names: list[str]
    root: Path | None = field(default=None, compare=False)

    @property
    def num_classes(self) -> int:
        return len(self.class_names)

    def validate(self, unique_paths: bool = True) -> None:
        """Check id ranges, split labels, and (for source manifests) path uniqueness.

        Upsampled manifests intentionally repeat paths; pass unique_paths=False.
        """
        seen: set[str] = set()
        for e in self.entries:
            if e.split not in SPLITS:
                raise DataError(f"unknown split {e.split!r} for {e.path}")
            if not 0 <= e.class_id < len(self.class_names):
                raise DataError(f"class id {e.class_id} out of range for {e.path}")
            if not 0 <= e.category_id < len(self.category_names):
                raise DataError(f"category id {e.category_id} out of range for {e.path}")
            if unique_paths:
                if e.path in seen:
                    raise DataError(f"duplicate path {e.path}")
                seen.add(e.path)

    def entries_for(self, split: str | None) -> list[ManifestEntry]:
        if split is None or split == "all":
            return list(self.entries)
        if split not in SPLITS:
            raise DataError(f"unknown split {split!r}")
        return [e for e in self.entries if e.split == split]

    def indices_for(self, split: str | None) -> list[int]:
        if split is None or split == "all":
            return list(range(len(self.entries)))
        if split not in SPLITS:
            raise DataError(f"unknown split {split!r}")
        return [i for i, e in enumerate(self.entries) if e.split == split]

    def class_counts(self, split: str | None = None) -> Counter:
        return Counter(e.class_id for e in self.entries_for(split))

    def resolve(self, entry: ManifestEntry) -> Path:
        p = Path(entry.path)
        if p.is_absolute() or self.root is None:
            return p
        return self.root / p

    def to_json(self) -> str:
        doc = {
            "categories": self.category_names,
            "classes": self.class_names,
            "entries": [
                {
                    "path": e.path,
                    "category": e.category_id,
                    "class": e.class_id,
                    "split": e.split,
                }
                for e in self.entries
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def save(self, path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "DatasetManifest":
        path = Path(path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            entries = [
                ManifestEntry(
                    path=item["path"],
                    category_id=int(item["category"]),
                    class_id=int(item["class"]),
                    split=item["split"],
                )
                for item in doc["entries"]
            ]
            manifest = cls(
                entries=entries,
                category_names=list(doc["categories"]),
                class_names=list(doc["classes"]),
                root=path.parent,
            )
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise DataError(f"malformed manifest {path}: {exc}") from exc
        manifest.validate()
        return manifest
