"""Prequential G-mean with per-class fading factors."""

from __future__ import annotations

import numpy as np

from .errors import ContractError

__all__ = ["PrequentialGmean", "batch_gmean"]


class PrequentialGmean:
    """Faded per-class recall, combined by a geometric mean over the classes seen so far.

    On an arrival of class ``c`` only that class's counters decay:
    ``correct[c] <- xi * correct[c] + hit`` and ``total[c] <- xi * total[c] + 1``.
    """

    def __init__(self, n_classes, fading=0.99):
        if not 0.0 < fading <= 1.0:
            raise ContractError(f"fading factor must lie in (0, 1], got {fading}")
        self.fading = float(fading)
        self.correct = np.zeros(n_classes)
        self.total = np.zeros(n_classes)

    @property
    def observed(self):
        return self.total > 0

    def recalls(self):
        """Faded recall per class; NaN for classes never observed."""
        out = np.full(len(self.total), np.nan)
        seen = self.observed
        out[seen] = self.correct[seen] / self.total[seen]
        return out

    def gmean(self) -> float:
        r = self.recalls()[self.observed]
        if r.size == 0:
            return 0.0
        if np.any(r == 0):
            return 0.0
        return float(np.exp(np.mean(np.log(r))))

    def update(self, y_true, y_pred) -> float:
        c = int(y_true)
        self.correct[c] = self.fading * self.correct[c] + (1.0 if y_pred == y_true else 0.0)
        self.total[c] = self.fading * self.total[c] + 1.0
        return self.gmean()


def batch_gmean(y_true, y_pred) -> float:
    """Unfaded G-mean from raw confusion counts over the classes present in ``y_true``."""
    y_true = np.asarray(y_true)
    y_pred = np.asarray(y_pred)
    if y_true.shape != y_pred.shape or y_true.ndim != 1:
        raise ContractError("truths and predictions must be equal-length 1-D sequences")
    if y_true.size == 0:
        raise ContractError("need at least one example")
    recalls = [np.mean(y_pred[y_true == c] == c) for c in np.unique(y_true)]
    return float(np.prod(recalls) ** (1.0 / len(recalls)))
