"""Command line entry point: ``augq run`` and ``augq transform-preview``."""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .augment import augment_examples
from .config import load_config
from .errors import AugQError
from .memory import MultiQueue
from .runner import _cached_dataset, run_experiment, run_rngs
from .stream import build_stream


def _run(args):
    cfg = load_config(args.config)
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.reps is not None:
        changes["repetitions"] = args.reps
    if changes:
        cfg = cfg.replace(**changes)
    records = run_experiment(cfg, out=args.out, workers=args.workers)
    finals = np.array([r.final_gmean for r in records])
    print(
        f"{cfg.method}: {len(records)} runs, final G-mean {finals.mean():.4f}"
        f" (stderr {finals.std(ddof=1) / np.sqrt(len(finals)) if len(finals) > 1 else 0.0:.4f})"
    )


def _preview(args):
    cfg = load_config(args.config)
    if cfg.method == "rvus-no-memory":
        raise AugQError("transform-preview needs a method with a memory")
    seed = cfg.seed if args.seed is None else args.seed
    rngs = run_rngs(seed)
    stream_seed = cfg.stream_seed
    if stream_seed is None:
        stream_seed = int(rngs["stream"].integers(2**63 - 1))
    pool = _cached_dataset(cfg.dataset, cfg.kind, cfg.scaling)
    seed_set, _ = build_stream(pool, cfg.stream_spec(stream_seed), cfg.seed_size)
    X, y = MultiQueue.from_seed_set(seed_set, cfg.memory_size).training_view()
    if not 0 <= args.index < len(X):
        raise AugQError(f"index {args.index} outside 0..{len(X) - 1}")
    n = args.n if args.n is not None else max(cfg.augmentations, 1)
    variants = augment_examples(X[args.index : args.index + 1], cfg.transforms, n, cfg.kind, rngs["augment"])
    out = open(args.out, "w") if args.out else sys.stdout
    try:
        for v in variants:
            out.write(f"{int(pool.classes[y[args.index]])}," + ",".join(repr(float(a)) for a in v) + "\n")
    finally:
        if args.out:
            out.close()


def build_parser():
    parser = argparse.ArgumentParser(prog="augq", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment and write its CSV files")
    run.add_argument("--config", required=True)
    run.add_argument("--seed", type=int, help="base seed (overrides the config)")
    run.add_argument("--reps", type=int, help="number of repetitions (overrides the config)")
    run.add_argument("--out", help="output directory (overrides the config)")
    run.add_argument("--workers", type=int, default=1, help="parallel repetitions")
    run.set_defaults(func=_run)

    prev = sub.add_parser("transform-preview", help="print augmented variants of a stored example")
    prev.add_argument("--config", required=True)
    prev.add_argument("--index", type=int, required=True, help="row of the initial memory view")
    prev.add_argument("--seed", type=int)
    prev.add_argument("-n", type=int, help="number of variants (default: the config's augmentations)")
    prev.add_argument("--out", help="write CSV here instead of stdout")
    prev.set_defaults(func=_preview)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        args.func(args)
    except AugQError as exc:
        print(f"error [{exc.module}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error [io]: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
