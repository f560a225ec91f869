"""Exact robust means of 1D samples under the truncated quadratic error.

Core estimators live in :mod:`robust1d.estimator`; channel (soft-histogram)
encoding in :mod:`robust1d.channels`; edge-preserving image smoothing in
:mod:`robust1d.smoothing`; comparison sweeps and the runtime benchmark in
:mod:`robust1d.experiments`; PGM image I/O in :mod:`robust1d.pgm`.
"""

from .channels import (
    ChannelConfig,
    EmptyVectorError,
    OutOfRangeError,
    channel_average,
    channel_decode,
    channel_encode,
)
from .estimator import (
    BadWeightError,
    EmptyInputError,
    NonFiniteError,
    RobustMeanResult,
    SampleSet,
    TooLargeError,
    brute_force_robust_mean,
    exact_robust_mean,
    make_sample_set,
    mean_shift,
    robust_error,
)
from .experiments import (
    GridSweepConfig,
    OutlierSweepConfig,
    SweepTable,
    grid_effect_sweep,
    linearity_benchmark,
    outlier_influence_sweep,
)
from .pgm import PgmError, PgmImage, read_pgm, write_pgm
from .smoothing import SmoothingConfig, gaussian_weights, smooth_image

__version__ = "0.1.0"

__all__ = [
    "BadWeightError",
    "ChannelConfig",
    "EmptyInputError",
    "EmptyVectorError",
    "GridSweepConfig",
    "NonFiniteError",
    "OutOfRangeError",
    "OutlierSweepConfig",
    "PgmError",
    "PgmImage",
    "RobustMeanResult",
    "SampleSet",
    "SmoothingConfig",
    "SweepTable",
    "TooLargeError",
    "brute_force_robust_mean",
    "channel_average",
    "channel_decode",
    "channel_encode",
    "exact_robust_mean",
    "gaussian_weights",
    "grid_effect_sweep",
    "linearity_benchmark",
    "make_sample_set",
    "mean_shift",
    "outlier_influence_sweep",
    "read_pgm",
    "robust_error",
    "smooth_image",
    "write_pgm",
]
