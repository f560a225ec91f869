"""Soft-histogram (channel) encoding of scalars.

A scalar is encoded as the vector of responses of a bank of overlapping
kernels placed at uniformly spaced centers, giving a histogram with smooth
bins.  Averaging the encodings of many samples and decoding the strongest
local mass back to a position yields an approximate robust mean: distant
outliers land in far-away channels and stop influencing the decoded value.

The kernel here is the quadratic B-spline on the normalized offset
``u = |x - center| / spacing``:

    K(u) = 3/4 - u**2          for u <= 1/2
    K(u) = (3/2 - u)**2 / 2    for 1/2 < u <= 3/2
    K(u) = 0                   beyond

It has support 3 * spacing (at most 3 active channels per sample), its
shifted copies sum to 1, and a 3-tap local first moment decodes a
single-sample encoding exactly.  Unlike the exact estimator in
:mod:`robust1d.estimator`, the decoded value depends slightly on where the
data sits relative to the channel grid; see
:func:`robust1d.experiments.grid_effect_sweep`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .estimator import SampleSet


class OutOfRangeError(ValueError):
    """Sample lies outside the representable range of the channel grid."""


class EmptyVectorError(ValueError):
    """Channel vector has no positive coefficient to decode."""


@dataclass(frozen=True)
class ChannelConfig:
    """Uniform channel grid: ``count`` centers starting at ``first_center``."""

    first_center: float
    spacing: float
    count: int

    def __post_init__(self):
        if not math.isfinite(self.first_center):
            raise ValueError("first_center must be finite")
        if not (math.isfinite(self.spacing) and self.spacing > 0.0):
            raise ValueError(f"spacing must be positive, got {self.spacing!r}")
        if self.count < 3:
            raise ValueError(f"need at least 3 channels, got {self.count}")

    @property
    def centers(self) -> np.ndarray:
        return self.first_center + self.spacing * np.arange(self.count)

    @property
    def low(self) -> float:
        """Lower edge of the representable range (half a bin past center 2)."""
        return self.first_center + 0.5 * self.spacing

    @property
    def high(self) -> float:
        """Upper edge of the representable range."""
        return self.first_center + (self.count - 1.5) * self.spacing


def bspline_kernel(u) -> np.ndarray:
    """Quadratic B-spline evaluated at normalized offsets ``u``."""
    u = np.abs(np.asarray(u, dtype=np.float64))
    out = np.zeros_like(u)
    near = u <= 0.5
    out[near] = 0.75 - u[near] * u[near]
    mid = ~near & (u <= 1.5)
    t = 1.5 - u[mid]
    out[mid] = 0.5 * t * t
    return out


def _check_range(x: np.ndarray, config: ChannelConfig) -> None:
    bad = (x < config.low) | (x > config.high)
    if np.any(bad):
        worst = float(np.asarray(x).reshape(-1)[np.argmax(bad.reshape(-1))])
        raise OutOfRangeError(
            f"sample {worst!r} outside representable range "
            f"[{config.low!r}, {config.high!r}]"
        )


def channel_encode(x: float, config: ChannelConfig) -> np.ndarray:
    """Encode one scalar into its channel coefficient vector.

    ``x`` must lie in ``[config.low, config.high]``; inside that range the
    coefficients sum to 1 and at most 3 are nonzero.
    """
    x = float(x)
    if not math.isfinite(x):
        raise OutOfRangeError(f"cannot encode non-finite value {x!r}")
    _check_range(np.asarray(x), config)
    return bspline_kernel((x - config.centers) / config.spacing)


def channel_average(samples: SampleSet, config: ChannelConfig) -> np.ndarray:
    """Weight-normalized average of the samples' channel encodings."""
    vals = samples.values
    _check_range(vals, config)
    u = (vals[:, None] - config.centers[None, :]) / config.spacing
    enc = bspline_kernel(u)
    w = samples.weights
    return enc.T @ w / float(np.sum(w))


def channel_decode(coefficients, config: ChannelConfig) -> float:
    """Decode a channel vector back to a scalar (approximate robust mean).

    Picks the interior center whose 3-channel neighborhood carries the most
    mass (ties: leftmost) and returns the local first moment

        center_j + spacing * (c[j+1] - c[j-1]) / (c[j-1] + c[j] + c[j+1])

    which reproduces single-sample encodings exactly.
    """
    c = np.asarray(coefficients, dtype=np.float64)
    if c.shape != (config.count,):
        raise ValueError(
            f"expected {config.count} coefficients, got shape {c.shape}"
        )
    if np.any(c < 0.0) or not np.all(np.isfinite(c)):
        raise ValueError("coefficients must be finite and non-negative")
    if not np.any(c > 0.0):
        raise EmptyVectorError("all channel coefficients are zero")

    windows = c[:-2] + c[1:-1] + c[2:]
    j = int(np.argmax(windows)) + 1  # argmax returns the first (leftmost) max
    mass = float(windows[j - 1])
    offset = config.spacing * float(c[j + 1] - c[j - 1]) / mass
    return config.first_center + config.spacing * j + offset
