"""Experiment configuration and its YAML file format.

A config file is a flat mapping; ``transforms`` is a list of
``{kind, low, high}`` entries. Relative ``dataset`` and ``out`` paths resolve
against the directory holding the config file. Example::

    dataset: mnist.csv
    kind: image
    shape: [28, 28, 1]
    counts: [400, 40, 40, 40, 40, 40, 40, 40, 40, 40]
    method: augmented-queues
    memory_size: 10
    augmentations: 5
    budget: 0.1
    hidden: [256, 128]
    repetitions: 20
    out: results/aq
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

import yaml

from .augment import TransformSpec, default_transforms
from .errors import ConfigurationError
from .stream import DataKind, StreamSpec

__all__ = ["ExperimentConfig", "METHODS", "load_config", "config_from_dict"]

METHODS = ("rvus-no-memory", "actiq", "augmented-queues")


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str
    kind: DataKind
    counts: tuple
    method: str = "augmented-queues"
    memory_size: int | None = 10
    augmentations: int = 5
    transforms: tuple = None
    scaling: str = "global"
    stream_seed: int | None = None  # fixed stream across repetitions when set
    # classifier
    hidden: tuple = (64,)
    learning_rate: float = 0.01
    activation: str = "relu"
    batch_size: int | str = 64
    shuffle: bool = True
    # active learning
    strategy: str = "rvus"
    budget: float = 0.1
    theta: float = 1.0
    step: float = 0.01
    delta: float = 1.0
    window: int = 100
    # evaluation and repetition
    fading: float = 0.99
    repetitions: int = 20
    seed: int = 0
    out: str | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ConfigurationError(f"method must be one of {METHODS}, got {self.method!r}")
        if self.strategy not in ("rvus", "fixed"):
            raise ConfigurationError(f"strategy must be 'rvus' or 'fixed', got {self.strategy!r}")
        if self.augmentations < 0:
            raise ConfigurationError("augmentations must be >= 0")
        if self.method == "rvus-no-memory":
            if self.memory_size is not None:
                raise ConfigurationError("rvus-no-memory keeps no memory; leave memory_size unset")
        elif self.memory_size is None or self.memory_size < 1:
            raise ConfigurationError(f"{self.method} needs memory_size >= 1")
        if self.method == "actiq" and self.augmentations != 0:
            raise ConfigurationError("actiq uses no augmentation; set augmentations: 0")
        if self.transforms is None:
            object.__setattr__(self, "transforms", tuple(default_transforms(self.kind)))
        object.__setattr__(self, "transforms", tuple(self.transforms))
        if self.augmentations > 0 and not self.transforms:
            raise ConfigurationError("augmentation requested with an empty transform set")
        for t in self.transforms:
            if t.applies_to != self.kind.name:
                raise ConfigurationError(f"{t.kind} does not apply to {self.kind.name} data")
        if self.repetitions < 1:
            raise ConfigurationError("repetitions must be >= 1")
        object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
        object.__setattr__(self, "hidden", tuple(int(h) for h in self.hidden))

    @property
    def seed_size(self) -> int:
        return self.memory_size or 0

    @property
    def n_classes(self) -> int:
        return len(self.counts)

    def stream_spec(self, seed) -> StreamSpec:
        return StreamSpec(path=self.dataset, kind=self.kind, counts=self.counts, seed=seed)

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


def _kind(raw):
    name = raw.pop("kind", "series")
    shape = raw.pop("shape", None)
    if shape is None:
        raise ConfigurationError("config needs 'shape' ([h, w, c] for images, [d] for series)")
    try:
        return DataKind(name, tuple(int(s) for s in shape))
    except ValueError as exc:
        raise ConfigurationError(str(exc)) from None


def config_from_dict(raw, base_dir=None) -> ExperimentConfig:
    raw = dict(raw)
    base = Path(base_dir) if base_dir is not None else None
    kind = _kind(raw)
    if "transforms" in raw and raw["transforms"] is not None:
        try:
            raw["transforms"] = tuple(
                TransformSpec(t["kind"], t.get("low"), t.get("high")) for t in raw["transforms"]
            )
        except (KeyError, TypeError):
            raise ConfigurationError("each transform needs at least a 'kind' key") from None
    for key in ("dataset", "out"):
        if raw.get(key) is not None and base is not None and not Path(raw[key]).is_absolute():
            raw[key] = str(base / raw[key])
    known = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(raw) - known
    if unknown:
        raise ConfigurationError(f"unknown config keys: {sorted(unknown)}")
    if "dataset" not in raw or "counts" not in raw:
        raise ConfigurationError("config needs 'dataset' and 'counts'")
    try:
        return ExperimentConfig(kind=kind, **raw)
    except TypeError as exc:
        raise ConfigurationError(str(exc)) from None


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"{path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigurationError(f"{path}: expected a key-value mapping")
    return config_from_dict(raw, base_dir=path.parent)
