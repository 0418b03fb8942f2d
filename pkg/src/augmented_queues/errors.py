"""Exception hierarchy. Every error carries the name of the module that raised it."""


class AugQError(Exception):
    module = "augmented_queues"


class ParseError(AugQError, ValueError):
    module = "stream_core"


class DimensionError(AugQError, ValueError):
    module = "stream_core"


class DatasetError(AugQError, ValueError):
    module = "stream_core"


class CapacityError(AugQError, ValueError):
    module = "stream_core"


class InitializationError(AugQError, ValueError):
    module = "memory"


class LabelError(AugQError, ValueError):
    module = "memory"


class ApplicabilityError(AugQError, ValueError):
    module = "augment"


class ConfigurationError(AugQError, ValueError):
    module = "config"


class ContractError(AugQError, ValueError):
    module = "contract"


class NumericError(AugQError, ArithmeticError):
    module = "model"


class RunError(AugQError, RuntimeError):
    """Wraps a failure inside a run with the seed and step where it happened."""

    module = "runner"

    def __init__(self, message, seed=None, step=None, origin=None):
        super().__init__(message)
        self.seed = seed
        self.step = step
        if origin is not None:
            self.module = origin
