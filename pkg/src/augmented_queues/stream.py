"""Dataset loading and arrival-stream synthesis.

Datasets are CSV files with one example per line: an integer label followed by
``d`` numeric features. Lines starting with ``#`` are skipped. Labels are
remapped to contiguous ids ``0..K-1`` in ascending order of the raw label.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import CapacityError, ConfigurationError, DatasetError, DimensionError, ParseError

__all__ = [
    "DataKind",
    "Dataset",
    "StreamSpec",
    "SeedSet",
    "Stream",
    "load_dataset",
    "build_stream",
]


@dataclass(frozen=True)
class DataKind:
    """What a feature vector represents: an image ``(h, w, c)`` or a series ``(d,)``."""

    name: str
    shape: tuple

    def __post_init__(self):
        if self.name not in ("image", "series"):
            raise ValueError(f"unknown data kind {self.name!r}")
        if self.name == "image" and len(self.shape) != 3:
            raise ValueError("image kind needs (height, width, channels)")
        if self.name == "series" and len(self.shape) != 1:
            raise ValueError("series kind needs (length,)")
        if any(int(s) <= 0 for s in self.shape):
            raise ValueError(f"non-positive extent in shape {self.shape}")

    @classmethod
    def image(cls, height, width, channels=1):
        return cls("image", (int(height), int(width), int(channels)))

    @classmethod
    def series(cls, length):
        return cls("series", (int(length),))

    @property
    def d(self) -> int:
        return int(np.prod(self.shape))


@dataclass(frozen=True, eq=False)
class Dataset:
    """All examples of a file. ``X`` is ``(n, d)`` in [0, 1], ``y`` holds ids ``0..K-1``."""

    X: np.ndarray
    y: np.ndarray
    classes: np.ndarray  # raw label for each remapped id
    kind: DataKind

    @property
    def d(self) -> int:
        return self.X.shape[1]

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def __len__(self):
        return len(self.y)


@dataclass(frozen=True)
class StreamSpec:
    """How to turn a dataset into an arrival stream.

    ``counts[c]`` is the number of arrivals of class ``c`` in the generated stream.
    """

    path: str | None
    kind: DataKind
    counts: tuple
    seed: int = 0
    n_classes: int = field(default=None)

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        object.__setattr__(self, "counts", counts)
        if self.n_classes is None:
            object.__setattr__(self, "n_classes", len(counts))
        if len(counts) != self.n_classes:
            raise ConfigurationError(f"{len(counts)} counts given for {self.n_classes} classes")
        if any(c < 0 for c in counts):
            raise ConfigurationError("per-class counts must be >= 0")
        if sum(c > 0 for c in counts) < 2:
            raise ConfigurationError("at least two classes need a positive count")

    @property
    def d(self) -> int:
        return self.kind.d

    @property
    def length(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True, eq=False)
class SeedSet:
    """The initial labelled pool: exactly ``M`` examples for each of ``K`` classes."""

    features: tuple  # K arrays of shape (M, d)
    indices: tuple  # K arrays of pool row indices

    @property
    def n_classes(self) -> int:
        return len(self.features)

    @property
    def size_per_class(self) -> int:
        return self.features[0].shape[0] if self.features else 0

    def __len__(self):
        return sum(f.shape[0] for f in self.features)


@dataclass(frozen=True, eq=False)
class Stream:
    """An ordered sequence of arrivals. Labels are hidden from the learner by the runner."""

    X: np.ndarray
    y: np.ndarray
    indices: np.ndarray  # pool row index of each arrival

    def __len__(self):
        return len(self.y)

    def __iter__(self):
        return iter(zip(self.X, self.y))


def _locate_bad_row(text, n_cols):
    for lineno, line in enumerate(io.StringIO(text), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        cells = stripped.split(",")
        if n_cols is not None and len(cells) != n_cols:
            raise DimensionError(
                f"line {lineno}: expected {n_cols - 1} features, found {len(cells) - 1}"
            )
        if n_cols is None:
            n_cols = len(cells)
        try:
            values = [float(c) for c in cells]
        except ValueError:
            raise ParseError(f"line {lineno}: could not parse {stripped[:60]!r}") from None
        if not np.all(np.isfinite(values)):
            raise ParseError(f"line {lineno}: non-finite value")
        if values[0] != int(values[0]):
            raise ParseError(f"line {lineno}: label {cells[0]!r} is not an integer")
    return None


def _scale(X, scaling):
    if scaling == "global":
        lo, hi = X.min(), X.max()
    elif scaling == "per-feature":
        lo, hi = X.min(axis=0), X.max(axis=0)
    else:
        raise ValueError(f"unknown scaling {scaling!r}")
    span = np.asarray(hi - lo, dtype=np.float64)
    safe = np.where(span > 0, span, 1.0)
    out = (X - lo) / safe
    # constant features carry no information; pin them to 0
    out = np.where(span > 0, out, 0.0)
    return np.clip(out, 0.0, 1.0)


def load_dataset(path, kind=None, scaling="global") -> Dataset:
    """Read a labelled CSV file and min-max scale its features into [0, 1].

    ``kind`` defaults to a series whose length is the number of feature columns.
    ``scaling="global"`` uses one (min, max) pair over every value in the file;
    ``"per-feature"`` uses a pair per column.
    """
    text = Path(path).read_text()
    try:
        raw = np.loadtxt(io.StringIO(text), delimiter=",", comments="#", ndmin=2)
    except ValueError:
        _locate_bad_row(text, None)
        raise ParseError(f"{path}: unparseable content") from None
    if raw.size == 0:
        raise DatasetError(f"{path}: no examples")
    if not np.all(np.isfinite(raw)):
        _locate_bad_row(text, None)
    labels = raw[:, 0]
    if np.any(labels != np.round(labels)):
        _locate_bad_row(text, None)
    X = raw[:, 1:]
    d = X.shape[1]
    if d == 0:
        raise DimensionError(f"{path}: rows carry no features")
    if kind is None:
        kind = DataKind.series(d)
    if kind.d != d:
        raise DimensionError(f"{path}: file has d={d} but kind {kind.shape} needs d={kind.d}")

    classes, y = np.unique(labels.astype(np.int64), return_inverse=True)
    if len(classes) < 2:
        raise DatasetError(f"{path}: need at least 2 distinct labels, found {len(classes)}")
    X = _scale(X.astype(np.float64), scaling)
    X.setflags(write=False)
    y = y.astype(np.int64)
    y.setflags(write=False)
    return Dataset(X=X, y=y, classes=classes, kind=kind)


def build_stream(pool: Dataset, spec: StreamSpec, seed_size: int, seed=None):
    """Draw the seed set and the arrival stream from ``pool``.

    For each class in ascending order, a random permutation of that class's rows
    supplies ``seed_size`` seed examples followed by ``spec.counts[c]`` arrivals.
    The arrivals of all classes are then shuffled into a single order. Seed set
    and stream never share a row. ``seed`` overrides ``spec.seed``.

    Returns ``(SeedSet, Stream)``.
    """
    if spec.n_classes != pool.n_classes:
        raise CapacityError(
            f"stream declares {spec.n_classes} classes, dataset has {pool.n_classes}"
        )
    if spec.d != pool.d:
        raise DimensionError(f"stream declares d={spec.d}, dataset has d={pool.d}")
    rng = np.random.default_rng(spec.seed if seed is None else seed)
    seed_idx, arrivals = [], []
    for c, count in enumerate(spec.counts):
        rows = np.flatnonzero(pool.y == c)
        need = count + seed_size
        if len(rows) < need:
            raise CapacityError(
                f"class {c} (label {pool.classes[c]}) has {len(rows)} examples, "
                f"needs {need} ({seed_size} seed + {count} stream)"
            )
        perm = rng.permutation(rows)
        seed_idx.append(perm[:seed_size])
        arrivals.append(perm[seed_size:need])
    order = rng.permutation(np.concatenate(arrivals))
    seed_set = SeedSet(
        features=tuple(pool.X[i] for i in seed_idx),
        indices=tuple(seed_idx),
    )
    stream = Stream(X=pool.X[order], y=pool.y[order], indices=order)
    return seed_set, stream
