"""Build an imbalanced arrival stream and watch the per-class FIFO memory.

Run from the repository root:  python demos/01_streams_and_memory.py
Writes data/mnist.csv on first use (needs mlxtend).
"""

from pathlib import Path

import numpy as np

from augmented_queues import DataKind, MultiQueue, StreamSpec, build_stream, load_dataset
from augmented_queues.datasets import write_mnist_csv

DATA = Path(__file__).parent / "data"
DATA.mkdir(exist_ok=True)
csv_path = DATA / "mnist.csv"
if not csv_path.exists():
    write_mnist_csv(csv_path)

# %% Load: pixels are scaled from 0..255 into [0, 1]
mnist = load_dataset(csv_path, DataKind.image(28, 28))
print(f"{len(mnist)} images, d={mnist.d}, K={mnist.n_classes}, range [{mnist.X.min()}, {mnist.X.max()}]")

# %% One majority digit and nine minority digits at 10% of its rate
spec = StreamSpec(None, mnist.kind, counts=[400] + [40] * 9, seed=0)
seed_set, stream = build_stream(mnist, spec, seed_size=10)
print("stream length:", len(stream), " per class:", np.bincount(stream.y).tolist())
print("first 20 arrivals:", stream.y[:20].tolist())

# %% The memory starts full with the seed set and never grows beyond K*M
memory = MultiQueue.from_seed_set(seed_set, capacity=10)
print("queue sizes after init:", memory.sizes())
for x, y in list(stream)[:200]:
    memory.append(x, y)
print("queue sizes after 200 appends:", memory.sizes(), " total:", len(memory))
X, y = memory.training_view()
print("training view:", X.shape, "labels per class:", np.bincount(y).tolist())
