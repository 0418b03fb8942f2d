"""Augmented Queues on a synthetic Two Patterns-style time-series stream.

Run from the repository root:  python demos/05_time_series.py
"""

from pathlib import Path

import numpy as np

from augmented_queues import DataKind, ExperimentConfig, run_once
from augmented_queues.datasets import two_patterns, write_csv

path = Path(__file__).parent / "data" / "two_patterns.csv"
path.parent.mkdir(exist_ok=True)
if not path.exists():
    X, y = two_patterns(seed=0)
    write_csv(path, X, y + 1)

# %% 4 classes, 128 points, one majority class
common = dict(
    dataset=str(path),
    kind=DataKind.series(128),
    counts=(1000, 100, 100, 100),
    hidden=(64,),
    learning_rate=0.1,
    budget=0.1,
)
for name, extra in {
    "ActiQ M=10": dict(method="actiq", augmentations=0),
    "Augmented Queues M=10 N=5": dict(method="augmented-queues", augmentations=5),
    "ActiQ M=100": dict(method="actiq", augmentations=0, memory_size=100),
}.items():
    cfg = ExperimentConfig(**{"memory_size": 10, **common, **extra})
    finals = [run_once(cfg, s).final_gmean for s in range(3)]
    print(f"{name:<28} final G-mean {np.mean(finals):.3f}")
