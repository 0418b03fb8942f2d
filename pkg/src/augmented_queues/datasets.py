"""Writers for the CSV files used by the demos and tests.

``write_mnist_csv`` needs the optional ``mlxtend`` package, which bundles a
5,000-image MNIST subset (500 per digit).
"""

from __future__ import annotations

import numpy as np

__all__ = ["write_mnist_csv", "two_patterns", "write_csv", "TWO_PATTERNS_COUNTS"]

# class sizes of the original Two Patterns set: down-down, up-down, down-up, up-up
TWO_PATTERNS_COUNTS = (1306, 1248, 1245, 1201)


def write_csv(path, X, y, header=None):
    """``label,f1,...,fd`` per line; integer-valued features are written without decimals."""
    X = np.asarray(X)
    with open(path, "w") as fh:
        if header:
            fh.write(f"# {header}\n")
        integral = np.all(X == np.round(X))
        for label, row in zip(np.asarray(y).tolist(), X):
            vals = row.astype(np.int64).tolist() if integral else row.tolist()
            fh.write(f"{int(label)}," + ",".join(map(repr, vals)) + "\n")


def write_mnist_csv(path):
    try:
        from mlxtend.data import mnist_data
    except ImportError as exc:
        raise ImportError("write_mnist_csv needs mlxtend (pip install mlxtend)") from exc
    X, y = mnist_data()
    write_csv(path, X, y, header="MNIST 5k subset: label, 784 pixels (28x28, 0..255)")
    return len(y)


def _step(series, start, length, up):
    half = length // 2
    lo, hi = (-5.0, 5.0) if up else (5.0, -5.0)
    series[start : start + half] = lo
    series[start + half : start + length] = hi


def two_patterns(counts=TWO_PATTERNS_COUNTS, length=128, seed=0):
    """Synthetic series in the style of the Two Patterns benchmark.

    Each series is Gaussian noise with two step patterns ("up": -5 then +5,
    "down": +5 then -5) placed in order at random non-overlapping positions.
    The class encodes the pair: 0 down-down, 1 up-down, 2 down-up, 3 up-up.
    Returns ``(X, y)`` with rows grouped by class.
    """
    rng = np.random.default_rng(seed)
    X, y = [], []
    for label, n in enumerate(counts):
        first_up = label in (1, 3)
        second_up = label in (2, 3)
        for _ in range(n):
            s = rng.normal(0.0, 1.0, size=length)
            l1, l2 = rng.integers(length // 8, length // 4 + 1, size=2)
            gap = rng.integers(4, length // 8 + 1)
            slack = length - (l1 + l2 + gap)
            t1 = rng.integers(0, slack + 1)
            t2 = t1 + l1 + gap + rng.integers(0, slack - t1 + 1)
            _step(s, t1, l1, first_up)
            _step(s, t2, l2, second_up)
            X.append(s)
            y.append(label)
    return np.array(X), np.array(y)
