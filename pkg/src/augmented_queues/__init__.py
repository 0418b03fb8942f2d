"""Online active learning with per-class queue memory and on-the-fly augmentation."""

from .active import RVUS, BudgetTracker, FixedUncertainty, confidence, fixed_decide
from .augment import (
    AugmentedQueues,
    TransformSpec,
    apply_transform,
    build_augmented_queues,
    default_transforms,
    merge_training_set,
)
from .config import ExperimentConfig, load_config
from .errors import AugQError
from .evaluation import PrequentialGmean, batch_gmean
from .memory import MultiQueue
from .model import MLP, MlpConfig
from .runner import RunRecord, run_experiment, run_once
from .stream import DataKind, StreamSpec, build_stream, load_dataset

__version__ = "0.1.0"
