"""Python bindings for the back-and-forth nudging source estimator."""

from ._core import (  # noqa: F401
    ConfigError,
    GridMismatchError,
    NoiseSpec,
    ObserverGains,
    RunConfig,
    estimate,
    l2_error,
    load_config,
    synthesize,
)
