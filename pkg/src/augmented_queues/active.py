"""Query strategies and the budget-spending gate for online active learning."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError

__all__ = [
    "confidence",
    "fixed_decide",
    "RVUS",
    "FixedUncertainty",
    "BudgetTracker",
]


def confidence(probs, tol=1e-9) -> float:
    """Best posterior probability ``max_y p(y | x)``."""
    probs = np.asarray(probs, dtype=np.float64)
    if probs.ndim != 1 or probs.size < 2:
        raise ContractError(f"expected a probability vector, got shape {probs.shape}")
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > tol:
        raise ContractError(f"probabilities must be >= 0 and sum to 1 (sum={probs.sum()!r})")
    return float(probs.max())


def fixed_decide(conf, threshold) -> bool:
    return conf < threshold


@dataclass
class FixedUncertainty:
    """Query whenever the confidence falls strictly below a constant threshold."""

    theta: float = 0.9

    def decide(self, conf, rng=None) -> bool:
        return fixed_decide(conf, self.theta)


@dataclass
class RVUS:
    """Randomised variable uncertainty sampling.

    The threshold is multiplied by a ``Normal(1, delta)`` draw before comparing;
    it shrinks by a factor ``1 - step`` after a query and grows by ``1 + step``
    otherwise, clamped to ``[theta_min, theta_max]``.
    """

    theta: float = 1.0
    step: float = 0.01
    delta: float = 1.0
    theta_min: float = 1e-6
    theta_max: float = 1.0

    def __post_init__(self):
        if not 0 < self.step < 1:
            raise ContractError(f"step must lie in (0, 1), got {self.step}")
        if self.delta < 0:
            raise ContractError(f"delta must be >= 0, got {self.delta}")
        if not 0 < self.theta_min <= self.theta <= self.theta_max:
            raise ContractError(
                f"theta {self.theta} outside [{self.theta_min}, {self.theta_max}]"
            )

    def decide(self, conf, rng) -> bool:
        eta = rng.normal(1.0, self.delta) if self.delta > 0 else 1.0
        query = conf < self.theta * eta
        self.theta *= (1.0 - self.step) if query else (1.0 + self.step)
        self.theta = min(max(self.theta, self.theta_min), self.theta_max)
        return bool(query)


@dataclass
class BudgetTracker:
    """Exponentially forgetting estimate of the labelling rate.

    ``spent = u / window`` with ``u <- u * (window - 1) / window + labelled``.
    A label may be requested only while ``spent < budget``.
    """

    budget: float
    window: int = 100
    u: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.budget <= 1.0:
            raise ContractError(f"budget must lie in [0, 1], got {self.budget}")
        if self.window < 1:
            raise ContractError(f"window must be positive, got {self.window}")

    @property
    def spent(self) -> float:
        return self.u / self.window

    def allows(self) -> bool:
        return self.spent < self.budget

    def update(self, labelled):
        self.u = self.u * (self.window - 1) / self.window + (1.0 if labelled else 0.0)
        return self
