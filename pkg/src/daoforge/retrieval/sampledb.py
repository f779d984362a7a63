"""The sample database: utterance/program pairs with labels and embeddings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..errors import DaoForgeError, RegistryError
from ..evaluator import program_actions
from ..parser import parse
from ..registry import Registry
from .labels import LabelSet, frame_labels
from .lexicon import Lexicon
from .normalize import normalize


@dataclass(frozen=True)
class Sample:
    id: str
    utterance: str
    normalized: str
    labels: LabelSet
    program: str
    annotations: dict[str, Any] = field(default_factory=dict, compare=False)
    embedding: np.ndarray | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SampleDB:
    samples: tuple[Sample, ...]
    lexicon: Lexicon

    def __post_init__(self):
        ids = [s.id for s in self.samples]
        if len(ids) != len(set(ids)):
            raise DaoForgeError("sample ids must be unique")

    def __len__(self):
        return len(self.samples)

    def get(self, sample_id: str) -> Sample:
        for s in self.samples:
            if s.id == sample_id:
                return s
        raise KeyError(sample_id)


def program_labels(source: str, registry: Registry) -> LabelSet:
    """Labels implied by a program: one frame per transaction."""
    tags: set = set()
    for chain, proto, action in program_actions(parse(source), registry):
        tags |= frame_labels(
            action.intent,
            action.name.name,
            [p.name for p in action.params],
            registry.chain_names.get(chain),
            proto.family,
        )
    return LabelSet(tags)


def make_sample(raw: dict, lexicon: Lexicon, embedder, registry: Registry | None) -> Sample:
    utterance = raw["utterance"]
    normalized = normalize(utterance, lexicon)
    if "labels" in raw:
        labels = LabelSet(raw["labels"])
    elif registry is not None:
        labels = program_labels(raw["program"], registry)
    else:
        raise RegistryError(f"sample {raw.get('id')!r} has no labels and no registry to derive them")
    if "embedding" in raw:
        vec = np.asarray(raw["embedding"], dtype=float)
        vec = vec / np.linalg.norm(vec)
    else:
        vec = embedder.embed(normalized)
    return Sample(str(raw["id"]), utterance, normalized, labels, raw["program"], raw.get("annotations", {}), vec)


def load_sample_db(path: str | Path, lexicon: Lexicon, embedder, registry: Registry | None = None) -> SampleDB:
    samples = []
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise DaoForgeError(f"cannot read sample database {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            raw = json.loads(line)
        except ValueError as exc:
            raise DaoForgeError(f"{path}:{n}: {exc}") from exc
        samples.append(make_sample(raw, lexicon, embedder, registry))
    return SampleDB(tuple(samples), lexicon)
