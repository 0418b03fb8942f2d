"""Compare the one-pass learner, ActiQ and Augmented Queues on imbalanced MNIST.

Run from the repository root:  python demos/04_augmented_queues_mnist.py
Needs data/mnist.csv. Takes about a minute.
"""

from pathlib import Path

import numpy as np

from augmented_queues import DataKind, ExperimentConfig, run_once

common = dict(
    dataset=str(Path(__file__).parent / "data" / "mnist.csv"),
    kind=DataKind.image(28, 28),
    counts=(400,) + (40,) * 9,
    hidden=(256, 128),
    learning_rate=0.1,
    budget=0.1,
)
methods = {
    "RVUS (no memory)": ExperimentConfig(method="rvus-no-memory", memory_size=None, augmentations=0, **common),
    "ActiQ M=10": ExperimentConfig(method="actiq", memory_size=10, augmentations=0, **common),
    "Augmented Queues M=10 N=5": ExperimentConfig(method="augmented-queues", memory_size=10, augmentations=5, **common),
    "ActiQ M=100": ExperimentConfig(method="actiq", memory_size=100, augmentations=0, **common),
}

# %% Final prequential G-mean over three seeds
for name, cfg in methods.items():
    recs = [run_once(cfg, seed) for seed in range(3)]
    finals = np.array([r.final_gmean for r in recs])
    curve = np.mean([r.gmean for r in recs], axis=0)
    marks = "  ".join(f"t={t}:{curve[t - 1]:.2f}" for t in (100, 300, 500, 760))
    print(f"{name:<28} final {finals.mean():.3f} +- {finals.std(ddof=1) / np.sqrt(3):.3f}   {marks}")
