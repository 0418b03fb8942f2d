"""Label-preserving transforms and the transient augmented memory built from them.

Every transform maps a feature vector in [0, 1] to a new vector of the same
length in [0, 1]. Image transforms view the vector as ``(height, width,
channels)`` in row-major order; series transforms view it as a 1-D signal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .errors import ApplicabilityError, ConfigurationError

__all__ = [
    "TransformSpec",
    "AugmentedQueues",
    "IMAGE_KINDS",
    "SERIES_KINDS",
    "DEFAULT_RANGES",
    "default_transforms",
    "apply_transform",
    "augment_examples",
    "build_augmented_queues",
    "merge_training_set",
    "window_slice",
    "time_warp",
    "affine_warp",
]

IMAGE_KINDS = frozenset(
    {"rotate", "translate", "scale", "horizontal-flip", "brightness", "contrast", "random-erase"}
)
SERIES_KINDS = frozenset({"window-slice", "time-warp"})

# (low, high) drawn uniformly per application
DEFAULT_RANGES = {
    "rotate": (-15.0, 15.0),  # degrees
    "translate": (-2, 2),  # whole pixels per axis
    "scale": (0.9, 1.1),
    "horizontal-flip": (0.0, 0.0),
    "brightness": (-0.2, 0.2),  # additive
    "contrast": (0.8, 1.2),  # multiplicative about the image mean
    "random-erase": (0.02, 0.15),  # fraction of image area
    "window-slice": (0.8, 0.95),  # kept fraction of the series
    "time-warp": (0.2, 0.2),  # std of knot speeds around 1
}

# hard limits on the configurable ranges
_BOUNDS = {
    "rotate": (-180.0, 180.0),
    "translate": (-8, 8),
    "scale": (0.5, 2.0),
    "horizontal-flip": (0.0, 0.0),
    "brightness": (-1.0, 1.0),
    "contrast": (0.0, 3.0),
    "random-erase": (0.0, 1.0),
    "window-slice": (0.05, 1.0),
    "time-warp": (0.0, 1.0),
}

_ERASE_ASPECT = (0.3, 1 / 0.3)
_WARP_KNOTS = 4
_MIN_WARP_SPEED = 1e-2


@dataclass(frozen=True)
class TransformSpec:
    """One member of the transform family: a kind and the range its parameter is drawn from."""

    kind: str
    low: float = None
    high: float = None

    def __post_init__(self):
        if self.kind not in DEFAULT_RANGES:
            raise ConfigurationError(f"unknown transform kind {self.kind!r}")
        lo, hi = DEFAULT_RANGES[self.kind]
        if self.low is None:
            object.__setattr__(self, "low", lo)
        if self.high is None:
            object.__setattr__(self, "high", hi)
        bmin, bmax = _BOUNDS[self.kind]
        if not (bmin <= self.low <= self.high <= bmax):
            raise ConfigurationError(
                f"{self.kind}: range [{self.low}, {self.high}] outside [{bmin}, {bmax}] "
                "or reversed"
            )

    @property
    def applies_to(self) -> str:
        return "image" if self.kind in IMAGE_KINDS else "series"


def default_transforms(kind):
    """Default family for a data kind. Horizontal flips are left out for images."""
    if kind.name == "image":
        names = ("rotate", "translate", "scale", "brightness", "contrast", "random-erase")
    else:
        names = ("window-slice", "time-warp")
    return [TransformSpec(n) for n in names]


def _check_applicable(spec, kind):
    if spec.applies_to != kind.name:
        raise ApplicabilityError(f"{spec.kind} applies to {spec.applies_to} data, not {kind.name}")


def affine_warp(img, matrix):
    """Resample an ``(h, w, c)`` image through a 2x2 linear map about its centre.

    Output pixel ``o`` takes the bilinear value of input location
    ``matrix @ (o - centre) + centre``; locations outside the image read 0.
    """
    h, w, _ = img.shape
    centre = np.array([(h - 1) / 2.0, (w - 1) / 2.0])
    matrix = np.asarray(matrix, dtype=np.float64)
    offset = centre - matrix @ centre
    out = np.empty_like(img)
    for ch in range(img.shape[2]):
        out[:, :, ch] = ndimage.affine_transform(
            img[:, :, ch], matrix, offset=offset, order=1, mode="constant", cval=0.0
        )
    return out


def _rotate(img, degrees):
    a = np.deg2rad(degrees)
    c, s = np.cos(a), np.sin(a)
    return affine_warp(img, [[c, -s], [s, c]])


def _scale(img, factor):
    return affine_warp(img, np.eye(2) / factor)


def _translate(img, dy, dx):
    h, w, _ = img.shape
    out = np.zeros_like(img)
    src_y = slice(max(0, -dy), min(h, h - dy))
    dst_y = slice(max(0, dy), min(h, h + dy))
    src_x = slice(max(0, -dx), min(w, w - dx))
    dst_x = slice(max(0, dx), min(w, w + dx))
    out[dst_y, dst_x] = img[src_y, src_x]
    return out


def _random_erase(img, area_frac, rng):
    h, w, ch = img.shape
    out = img.copy()
    target = area_frac * h * w
    if target <= 0:
        return out
    aspect = np.exp(rng.uniform(np.log(_ERASE_ASPECT[0]), np.log(_ERASE_ASPECT[1])))
    eh = min(h, int(round(np.sqrt(target * aspect))))
    ew = min(w, int(round(np.sqrt(target / aspect))))
    if eh == 0 or ew == 0:
        return out
    top = rng.integers(0, h - eh + 1)
    left = rng.integers(0, w - ew + 1)
    out[top : top + eh, left : left + ew] = rng.uniform(0.0, 1.0, size=(eh, ew, ch))
    return out


def window_slice(x, ratio, start):
    """Cut ``int(ratio * d)`` consecutive points starting at ``start`` and stretch them back to ``d``."""
    d = len(x)
    length = max(2, int(ratio * d))
    if length > d:
        length = d
    if not 0 <= start <= d - length:
        raise ValueError(f"slice start {start} out of range for length {length} in {d}")
    piece = x[start : start + length]
    pos = np.linspace(0.0, length - 1, d)
    return np.interp(pos, np.arange(length), piece)


def time_warp(x, knot_speeds):
    """Resample ``x`` along a smooth monotone time path.

    The local speed is interpolated linearly between knots spread evenly over the
    series; integrating it gives the warping path, rescaled to end at ``d - 1``.
    """
    d = len(x)
    speeds = np.maximum(np.asarray(knot_speeds, dtype=np.float64), _MIN_WARP_SPEED)
    knots = np.linspace(0.0, d - 1, len(speeds))
    grid = np.arange(d, dtype=np.float64)
    v = np.interp(grid, knots, speeds)
    path = np.concatenate(([0.0], np.cumsum((v[:-1] + v[1:]) / 2.0)))
    path *= (d - 1) / path[-1]
    return np.interp(path, grid, x)


def apply_transform(spec, x, kind, rng):
    """Apply one random draw of ``spec`` to the flat feature vector ``x``.

    Returns a new vector of the same length clipped to [0, 1].
    """
    _check_applicable(spec, kind)
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (kind.d,):
        raise ApplicabilityError(f"vector of shape {x.shape} does not match kind {kind.shape}")
    lo, hi = spec.low, spec.high
    k = spec.kind
    if kind.name == "image":
        img = x.reshape(kind.shape)
        if k == "rotate":
            out = _rotate(img, rng.uniform(lo, hi))
        elif k == "scale":
            out = _scale(img, rng.uniform(lo, hi))
        elif k == "translate":
            dy, dx = rng.integers(int(lo), int(hi) + 1, size=2)
            out = _translate(img, int(dy), int(dx))
        elif k == "horizontal-flip":
            out = img[:, ::-1, :]
        elif k == "brightness":
            out = img + rng.uniform(lo, hi)
        elif k == "contrast":
            c = rng.uniform(lo, hi)
            out = img * c + img.mean() * (1.0 - c)
        else:  # random-erase
            out = _random_erase(img, rng.uniform(lo, hi), rng)
        out = out.reshape(-1)
    else:
        if k == "window-slice":
            ratio = rng.uniform(lo, hi)
            length = min(kind.d, max(2, int(ratio * kind.d)))
            start = int(rng.integers(0, kind.d - length + 1))
            out = window_slice(x, ratio, start)
        else:  # time-warp
            speeds = rng.normal(1.0, rng.uniform(lo, hi), size=_WARP_KNOTS)
            out = time_warp(x, speeds)
    return np.clip(out, 0.0, 1.0)


class AugmentedQueues:
    """``N`` augmented copies of every stored example, grouped by class.

    ``per_class[c]`` is an ``(n_c * N, d)`` array whose rows ``i*N .. i*N+N-1``
    derive from the ``i``-th stored example of class ``c``.
    """

    def __init__(self, per_class, n_per_example):
        self.per_class = per_class
        self.n_per_example = n_per_example

    def __len__(self):
        return sum(len(a) for a in self.per_class)

    def sizes(self):
        return [len(a) for a in self.per_class]

    def as_arrays(self):
        d = self.per_class[0].shape[1]
        X = np.concatenate(self.per_class) if len(self) else np.empty((0, d))
        y = np.concatenate(
            [np.full(len(a), c, dtype=np.int64) for c, a in enumerate(self.per_class)]
        )
        return X, y


def augment_examples(X, transforms, n, kind, rng):
    """``n`` augmented copies of each row of ``X``, each with an independently drawn transform."""
    X = np.asarray(X, dtype=np.float64)
    out = np.empty((len(X) * n, X.shape[1]))
    if n == 0 or len(X) == 0:
        return out
    picks = rng.integers(0, len(transforms), size=len(X) * n)
    for r, x in enumerate(X):
        for j in range(n):
            out[r * n + j] = apply_transform(transforms[picks[r * n + j]], x, kind, rng)
    return out


def build_augmented_queues(memory, transforms, n, kind, rng):
    """Augment the whole multi-queue memory, class by class in ascending order."""
    if n < 0:
        raise ConfigurationError(f"augmentations per example must be >= 0, got {n}")
    transforms = list(transforms)
    if n > 0:
        if not transforms:
            raise ConfigurationError("transform family is empty")
        for t in transforms:
            _check_applicable(t, kind)
    per_class = []
    for c in range(memory.n_classes):
        stored = memory[c]
        X = np.stack(stored) if stored else np.empty((0, memory.d))
        per_class.append(augment_examples(X, transforms, n, kind, rng))
    return AugmentedQueues(per_class, n)


def merge_training_set(memory, augmented=None):
    """Stored examples followed by their augmented copies, as ``(X, y)``."""
    X, y = memory.training_view()
    if augmented is None or len(augmented) == 0:
        return X, y
    Xa, ya = augmented.as_arrays()
    return np.concatenate([X, Xa]), np.concatenate([y, ya])
