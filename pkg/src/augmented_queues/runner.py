"""End-to-end online active learning runs and their CSV outputs."""

from __future__ import annotations

import csv
import logging
import weakref
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .active import RVUS, BudgetTracker, FixedUncertainty, confidence
from .augment import augment_examples, build_augmented_queues, merge_training_set
from .errors import AugQError, RunError
from .evaluation import PrequentialGmean
from .memory import MultiQueue
from .model import MLP, MlpConfig
from .stream import build_stream, load_dataset

__all__ = [
    "Learner",
    "RunRecord",
    "StepInfo",
    "run_once",
    "run_experiment",
    "write_run_csv",
    "aggregate",
    "run_rngs",
]

log = logging.getLogger(__name__)

RUN_COLUMNS = ("t", "gmean", "labels_used", "budget_spent", "theta")
AGGREGATE_COLUMNS = ("t", "mean_gmean", "stderr")


def run_rngs(seed):
    """Independent generators for each consumer of randomness within one run.

    Keeping them separate means e.g. switching augmentation off does not shift
    the draws seen by the query strategy or the mini-batch shuffles.
    """
    names = ("stream", "model", "strategy", "augment", "train")
    children = np.random.SeedSequence(seed).spawn(len(names))
    return {n: np.random.default_rng(s) for n, s in zip(names, children)}


class Learner:
    """The classifier plus whatever labelled data the method is allowed to keep.

    ``memory`` is ``None`` for the one-pass learner. Augmented copies are built
    inside :meth:`learn` and released before it returns; ``last_augmented``
    holds only a weak reference to them so callers can check that.
    """

    def __init__(self, cfg, seed_set, rngs):
        self.cfg = cfg
        self.kind = cfg.kind
        self.rngs = rngs
        model_seed = int(rngs["model"].integers(2**63 - 1))
        self.model = MLP(
            MlpConfig(
                n_inputs=cfg.kind.d,
                n_classes=cfg.n_classes,
                hidden=cfg.hidden,
                learning_rate=cfg.learning_rate,
                activation=cfg.activation,
                seed=model_seed,
                batch_size=cfg.batch_size,
                shuffle=cfg.shuffle,
            )
        )
        self.memory = None
        if cfg.method != "rvus-no-memory":
            self.memory = MultiQueue.from_seed_set(seed_set, cfg.memory_size)
        self.last_augmented = None
        self.trained_on = 0

    def predict_proba(self, x):
        return self.model.predict_proba(x)

    def retained(self) -> int:
        return 0 if self.memory is None else len(self.memory)

    def learn(self, x, y):
        cfg = self.cfg
        if self.memory is None:
            X = np.asarray(x, dtype=np.float64)[None, :]
            extra = augment_examples(X, cfg.transforms, cfg.augmentations, self.kind, self.rngs["augment"])
            X = np.concatenate([X, extra])
            Y = np.full(len(X), int(y), dtype=np.int64)
            self.last_augmented = None
        else:
            self.memory.append(x, y)
            aug = build_augmented_queues(
                self.memory, cfg.transforms, cfg.augmentations, self.kind, self.rngs["augment"]
            )
            self.last_augmented = weakref.ref(aug)
            X, Y = merge_training_set(self.memory, aug)
            del aug
        self.model.train_step(X, Y, self.rngs["train"])
        self.trained_on = len(Y)


@dataclass
class StepInfo:
    t: int
    queried: bool
    learner: Learner


@dataclass
class RunRecord:
    seed: int
    t: np.ndarray
    gmean: np.ndarray
    labels_used: np.ndarray
    budget_spent: np.ndarray
    theta: np.ndarray
    summary: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    @property
    def final_gmean(self) -> float:
        return float(self.gmean[-1])

    @property
    def total_labels(self) -> int:
        return int(self.labels_used[-1])

    def rows(self):
        return zip(
            self.t.tolist(),
            self.gmean.tolist(),
            self.labels_used.tolist(),
            self.budget_spent.tolist(),
            self.theta.tolist(),
        )


@lru_cache(maxsize=4)
def _cached_dataset(path, kind, scaling):
    return load_dataset(path, kind, scaling=scaling)


def _strategy(cfg):
    if cfg.strategy == "rvus":
        return RVUS(theta=cfg.theta, step=cfg.step, delta=cfg.delta)
    return FixedUncertainty(theta=cfg.theta)


def run_once(cfg, seed, observer=None, pool=None) -> RunRecord:
    """Run the online active learning loop once over a freshly drawn stream.

    Each arrival is predicted and scored before it can trigger training. If the
    budget allows and the strategy asks for the label, the example is stored
    (memory methods), the training set is built and the network makes one pass
    over it. The budget estimate is updated on every step. ``observer`` is
    called after every step with a :class:`StepInfo`.
    """
    seed = int(seed)
    try:
        if pool is None:
            pool = _cached_dataset(cfg.dataset, cfg.kind, cfg.scaling)
        rngs = run_rngs(seed)
        stream_seed = cfg.stream_seed
        if stream_seed is None:
            stream_seed = int(rngs["stream"].integers(2**63 - 1))
        seed_set, stream = build_stream(pool, cfg.stream_spec(stream_seed), cfg.seed_size)
        learner = Learner(cfg, seed_set, rngs)
    except AugQError as exc:
        raise RunError(f"seed {seed}, setup: {exc}", seed=seed, step=0, origin=exc.module) from exc

    strategy = _strategy(cfg)
    budget = BudgetTracker(cfg.budget, cfg.window)
    metric = PrequentialGmean(cfg.n_classes, cfg.fading)
    T = len(stream)
    gm = np.empty(T)
    used = np.empty(T, dtype=np.int64)
    spent = np.empty(T)
    theta = np.empty(T)
    labels = 0
    for i, (x, y) in enumerate(stream):
        t = i + 1
        try:
            probs = learner.predict_proba(x)
            gm[i] = metric.update(int(y), int(np.argmax(probs)))
            queried = False
            if budget.allows() and strategy.decide(confidence(probs), rngs["strategy"]):
                learner.learn(x, int(y))  # the oracle reveals y only here
                queried = True
                labels += 1
            budget.update(queried)
        except AugQError as exc:
            raise RunError(
                f"seed {seed}, step {t}: {exc}", seed=seed, step=t, origin=exc.module
            ) from exc
        used[i] = labels
        spent[i] = budget.spent
        theta[i] = strategy.theta
        if observer is not None:
            observer(StepInfo(t=t, queried=queried, learner=learner))
    record = RunRecord(
        seed=seed,
        t=np.arange(1, T + 1),
        gmean=gm,
        labels_used=used,
        budget_spent=spent,
        theta=theta,
    )
    record.summary = {"final_gmean": record.final_gmean, "total_labels": record.total_labels}
    return record


def _fmt(v):
    return repr(float(v)) if isinstance(v, float) else str(v)


def write_run_csv(record, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(RUN_COLUMNS)
        for row in record.rows():
            w.writerow([_fmt(v) for v in row])


def aggregate(records):
    """Mean and standard error of the prequential G-mean at every step."""
    G = np.stack([r.gmean for r in records])
    mean = G.mean(axis=0)
    if len(records) > 1:
        stderr = G.std(axis=0, ddof=1) / np.sqrt(len(records))
    else:
        stderr = np.zeros_like(mean)
    return records[0].t, mean, stderr


def _run_for_pool(args):
    cfg, seed = args
    return run_once(cfg, seed)


def run_experiment(cfg, out=None, workers=1):
    """Run ``cfg.repetitions`` seeds from ``cfg.seed`` and write the CSV files.

    Writes ``run_<seed>.csv`` per repetition, ``summary.csv`` with the final
    G-mean and label count of every run, and ``aggregate.csv``. Returns the
    list of run records.
    """
    out = Path(out or cfg.out or "results")
    out.mkdir(parents=True, exist_ok=True)
    seeds = [cfg.seed + r for r in range(cfg.repetitions)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            records = list(ex.map(_run_for_pool, [(cfg, s) for s in seeds]))
    else:
        records = []
        for s in seeds:
            records.append(run_once(cfg, s))
            log.info("seed %d: final gmean %.4f, %d labels", s, records[-1].final_gmean,
                     records[-1].total_labels)
    for rec in records:
        write_run_csv(rec, out / f"run_{rec.seed}.csv")
    with open(out / "summary.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("seed", "final_gmean", "total_labels"))
        for rec in records:
            w.writerow((rec.seed, _fmt(rec.final_gmean), rec.total_labels))
    t, mean, stderr = aggregate(records)
    with open(out / "aggregate.csv", "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(AGGREGATE_COLUMNS)
        for row in zip(t.tolist(), mean.tolist(), stderr.tolist()):
            w.writerow([_fmt(v) for v in row])
    return records
