"""How the randomised threshold and the budget gate share out labels.

Run from the repository root:  python demos/03_budget_and_rvus.py
"""

import numpy as np

from augmented_queues import RVUS, BudgetTracker

rng = np.random.default_rng(1)

# %% A classifier that grows more confident over time
T = 5000
confidence = np.clip(0.3 + 0.65 * np.arange(T) / T + rng.normal(0, 0.1, T), 0.05, 1.0)

for B in (0.01, 0.1, 0.5):
    budget, strategy = BudgetTracker(B, window=100), RVUS()
    queried = np.zeros(T, dtype=bool)
    for t in range(T):
        if budget.allows():
            queried[t] = strategy.decide(confidence[t], rng)
        budget.update(queried[t])
    early, late = queried[: T // 2].mean(), queried[T // 2 :].mean()
    print(f"B={B:<5} labelled {queried.mean():.4f} (first half {early:.3f}, second half {late:.3f}),"
          f" final threshold {strategy.theta:.3f}")

# %% Randomisation keeps a nonzero chance of querying confident instances
strategy, hits = RVUS(theta=0.9), 0
for _ in range(10_000):
    strategy.theta = 0.9
    hits += strategy.decide(0.95, rng)
print(f"queries on conf=0.95 with theta=0.9: {hits} / 10000 (a fixed threshold gives 0)")
