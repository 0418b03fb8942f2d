"""Per-class bounded FIFO memory of labelled examples."""

from __future__ import annotations

from collections import deque

import numpy as np

from .errors import InitializationError, LabelError

__all__ = ["MultiQueue"]


class MultiQueue:
    """``K`` FIFO queues of capacity ``M``, one per class.

    Appending to a full queue evicts its oldest element. Nothing else is ever
    removed, so the memory holds at most ``K * M`` examples.
    """

    def __init__(self, n_classes, capacity, d):
        if capacity < 1:
            raise InitializationError(f"queue capacity must be positive, got {capacity}")
        if n_classes < 2:
            raise InitializationError(f"need at least 2 classes, got {n_classes}")
        self.capacity = int(capacity)
        self.d = int(d)
        self.queues = [deque(maxlen=self.capacity) for _ in range(n_classes)]

    @classmethod
    def from_seed_set(cls, seed_set, capacity):
        """Fill every queue with the seed examples of its class, in listed order."""
        feats = seed_set.features
        if len(feats) < 2:
            raise InitializationError("seed set must cover at least 2 classes")
        sizes = [f.shape[0] for f in feats]
        if any(s != capacity for s in sizes):
            raise InitializationError(
                f"seed set must hold exactly {capacity} examples per class, got {sizes}"
            )
        q = cls(len(feats), capacity, feats[0].shape[1])
        for c, block in enumerate(feats):
            for x in block:
                q.append(x, c)
        return q

    @property
    def n_classes(self) -> int:
        return len(self.queues)

    def append(self, x, label):
        label = int(label)
        if not 0 <= label < self.n_classes:
            raise LabelError(f"label {label} outside 0..{self.n_classes - 1}")
        x = np.array(x, dtype=np.float64)
        if x.shape != (self.d,):
            raise LabelError(f"example has shape {x.shape}, memory stores ({self.d},)")
        self.queues[label].append(x)
        return self

    def sizes(self):
        return [len(q) for q in self.queues]

    def __len__(self):
        return sum(len(q) for q in self.queues)

    def __getitem__(self, label):
        return list(self.queues[label])

    def training_view(self):
        """All stored examples as ``(X, y)``: class ascending, oldest first."""
        X = [x for q in self.queues for x in q]
        y = [c for c, q in enumerate(self.queues) for _ in q]
        if not X:
            return np.empty((0, self.d)), np.empty(0, dtype=np.int64)
        return np.stack(X), np.asarray(y, dtype=np.int64)
