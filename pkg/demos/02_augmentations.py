"""Look at what each transform does to an image and to a time series.

Run from the repository root:  python demos/02_augmentations.py
Needs data/mnist.csv (created by 01_streams_and_memory.py).
"""

from pathlib import Path

import numpy as np

from augmented_queues import DataKind, TransformSpec, apply_transform, load_dataset
from augmented_queues.augment import time_warp, window_slice
from augmented_queues.datasets import two_patterns

rng = np.random.default_rng(0)
mnist = load_dataset(Path(__file__).parent / "data" / "mnist.csv", DataKind.image(28, 28))
digit = mnist.X[0]


def ascii_digit(v):
    rows = v.reshape(28, 28)[4:24:2, 4:24]
    return "\n".join("".join(" .:*#"[min(4, int(p * 5))] for p in row) for row in rows)


# %% Image transforms with their default ranges
print("original\n" + ascii_digit(digit))
for kind in ("rotate", "translate", "scale", "contrast", "random-erase"):
    out = apply_transform(TransformSpec(kind), digit, mnist.kind, rng)
    print(f"\n{kind}: mean abs change {np.abs(out - digit).mean():.3f}")
    print(ascii_digit(out))

# %% A rotation of exactly 0 degrees changes nothing
same = apply_transform(TransformSpec("rotate", 0, 0), digit, mnist.kind, rng)
print("\nzero rotation is exact:", np.array_equal(same, digit))

# %% Series transforms keep the length
X, y = two_patterns(counts=(1, 1, 1, 1), seed=3)
s = (X[3] - X.min()) / (X.max() - X.min())
sliced = window_slice(s, 0.85, start=10)
warped = time_warp(s, [0.7, 1.3, 1.1, 0.8])
print("\nseries lengths:", len(s), len(sliced), len(warped))
print("window slice moves the first step pattern:", np.argmax(np.abs(np.diff(s))), "->",
      np.argmax(np.abs(np.diff(sliced))))
for kind in ("window-slice", "time-warp"):
    out = apply_transform(TransformSpec(kind), s, DataKind.series(128), rng)
    print(f"{kind}: max abs change {np.abs(out - s).max():.3f}, stays in [0,1]: {out.min() >= 0 and out.max() <= 1}")
