"""Deterministic comparison sweeps and a runtime-scaling benchmark.

Three generators, each returning a small CSV-serializable table:

* :func:`outlier_influence_sweep` drags a single outlier across a range and
  records how the exact robust mean and the channel-averaging baseline
  respond.  The exact estimator either absorbs the outlier or rejects it
  completely; the channel baseline transitions smoothly and overshoots at
  intermediate positions.
* :func:`grid_effect_sweep` slides a symmetric two-sample configuration
  between two channel centers.  The decoded channel mean wobbles with the
  grid position; the exact estimator stays put.
* :func:`linearity_benchmark` times the exact estimator's sweep on
  pre-sorted random data of growing size; the medians scale linearly.
"""

from __future__ import annotations

import math
import sys
import time
from dataclasses import dataclass, field

import numpy as np

from .channels import ChannelConfig, channel_average, channel_decode
from .estimator import SampleSet, _sweep, exact_robust_mean, make_sample_set


def format_number(v) -> str:
    """Shortest decimal text accurate to 12 significant digits."""
    return f"{float(v):.12g}"


@dataclass(frozen=True)
class SweepTable:
    """Column names plus numeric rows, serializable as CSV."""

    columns: tuple[str, ...]
    rows: list[tuple]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join(format_number(v) for v in row))
        return "\n".join(lines) + "\n"

    def write_csv(self, destination) -> None:
        """Write to a path, a text file object, or '-' for stdout."""
        text = self.to_csv()
        if destination == "-":
            sys.stdout.write(text)
        elif hasattr(destination, "write"):
            destination.write(text)
        else:
            with open(destination, "w", newline="") as fh:
                fh.write(text)


def channel_grid_covering(lo: float, hi: float, spacing: float) -> ChannelConfig:
    """Channel grid spanning [lo, hi] with 1.5 spacings of margin per side."""
    if hi < lo:
        raise ValueError(f"empty range [{lo}, {hi}]")
    first = lo - 1.5 * spacing
    span = (hi + 1.5 * spacing) - first
    count = max(3, int(math.ceil(span / spacing - 1e-12)) + 1)
    return ChannelConfig(first_center=first, spacing=spacing, count=count)


def _sweep_positions(start: float, stop: float, step: float) -> np.ndarray:
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    return start + step * np.arange(n)


DEFAULT_INLIERS = (2.5, 3.0, 3.5)


@dataclass(frozen=True)
class OutlierSweepConfig:
    """Inlier cluster, outlier positions to sweep, cutoff, and channel grid."""

    inliers: SampleSet
    outlier_positions: np.ndarray
    cutoff: float
    channel_config: ChannelConfig

    def __post_init__(self):
        pos = np.asarray(self.outlier_positions, dtype=np.float64)
        if pos.size == 0:
            raise ValueError("need at least one outlier position")
        if np.any(np.diff(pos) <= 0.0):
            raise ValueError("outlier positions must be strictly increasing")
        object.__setattr__(self, "outlier_positions", pos)

    @classmethod
    def default(
        cls,
        inliers=DEFAULT_INLIERS,
        start: float = 0.0,
        stop: float = 10.0,
        step: float = 0.05,
        cutoff: float = 1.0,
        spacing: float | None = None,
    ) -> "OutlierSweepConfig":
        """Paper-style setup: inliers with mean 3.0, outlier swept 0..10.

        Channel spacing defaults to the cutoff (the grid pitch plays the
        role of the error-norm scale); the grid is sized to cover inliers
        and every swept position.
        """
        inliers = list(inliers)
        if not inliers:
            raise ValueError("need at least one inlier value")
        positions = _sweep_positions(start, stop, step)
        spacing = cutoff if spacing is None else spacing
        lo = min(float(positions[0]), min(inliers))
        hi = max(float(positions[-1]), max(inliers))
        return cls(
            inliers=make_sample_set(inliers),
            outlier_positions=positions,
            cutoff=cutoff,
            channel_config=channel_grid_covering(lo, hi, spacing),
        )


def outlier_influence_sweep(config: OutlierSweepConfig) -> SweepTable:
    """Exact vs channel-decoded robust mean as one outlier moves."""
    rows = []
    inlier_vals = config.inliers.values
    inlier_wts = config.inliers.weights
    for p in config.outlier_positions:
        samples = make_sample_set(
            np.append(inlier_vals, p), np.append(inlier_wts, 1.0)
        )
        exact = exact_robust_mean(samples, config.cutoff).mean
        channel = channel_decode(
            channel_average(samples, config.channel_config), config.channel_config
        )
        rows.append((float(p), exact, channel))
    return SweepTable(("outlier_position", "exact_mean", "channel_mean"), rows)


@dataclass(frozen=True)
class GridSweepConfig:
    """Half-spread of the sample pair and its offsets from a channel center."""

    d: float
    x0_offsets: np.ndarray
    channel_config: ChannelConfig = field(
        default_factory=lambda: ChannelConfig(first_center=0.0, spacing=1.0, count=11)
    )

    def __post_init__(self):
        if not self.d > 0.0:
            raise ValueError(f"half-spread d must be positive, got {self.d}")
        off = np.asarray(self.x0_offsets, dtype=np.float64)
        if off.size == 0:
            raise ValueError("need at least one offset")
        if np.any(off < 0.0) or np.any(off >= 1.0):
            raise ValueError("offsets must lie in [0, 1) (fractions of the spacing)")
        object.__setattr__(self, "x0_offsets", off)

    @classmethod
    def default(cls, d: float = 0.6, step: float = 0.05, spacing: float = 1.0) -> "GridSweepConfig":
        offsets = _sweep_positions(0.0, 0.95, step)
        offsets = offsets[offsets < 1.0]
        grid = ChannelConfig(first_center=0.0, spacing=spacing, count=11)
        return cls(d=d * spacing, x0_offsets=offsets, channel_config=grid)


def grid_effect_sweep(config: GridSweepConfig) -> SweepTable:
    """Decoding bias of a symmetric pair vs its position on the channel grid.

    For each offset the pair ``{x0 - d, x0 + d}`` sits at ``x0`` = (a fixed
    interior center) + offset * spacing.  The channel displacement is the
    decoded mean minus ``x0``; the exact displacement uses the sweep
    estimator with cutoff equal to the channel spacing.
    """
    grid = config.channel_config
    j = grid.count // 2  # fixed interior center
    base = grid.first_center + grid.spacing * j
    rows = []
    for o in config.x0_offsets:
        x0 = base + grid.spacing * float(o)
        pair = make_sample_set([x0 - config.d, x0 + config.d])
        channel = channel_decode(channel_average(pair, grid), grid)
        exact = exact_robust_mean(pair, grid.spacing).mean
        rows.append((float(o), channel - x0, exact - x0))
    return SweepTable(("x0_offset", "channel_displacement", "exact_displacement"), rows)


def benchmark_sample_set(n: int, seed: int = 0) -> SampleSet:
    """Pre-sorted uniform random samples with unit weights, reproducible."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = np.random.default_rng([seed, n])
    return SampleSet(values=np.sort(rng.random(n)), weights=np.ones(n))


def linearity_benchmark(
    sizes, repetitions: int = 5, seed: int = 0, cutoff: float = 0.05
) -> SweepTable:
    """Median wall time of the O(n) estimator scan per input size.

    Samples are generated, sorted, and unpacked up front; only the window
    scan itself is timed.  One untimed warm-up scan per size settles
    allocator and cache effects, and the repetitions are interleaved across
    sizes so that slow system phases bias every size alike rather than
    skewing the ratios.  Inputs are deterministic in ``seed``; the timings
    are not.
    """
    sizes = [int(n) for n in sizes]
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError("sizes must be strictly increasing")
    if repetitions < 5:
        raise ValueError(f"need at least 5 repetitions, got {repetitions}")

    data = []
    for n in sizes:
        samples = benchmark_sample_set(n, seed)
        xs = samples.values.tolist()
        ws = samples.weights.tolist()
        data.append((xs, ws, math.fsum(ws)))
    for xs, ws, w_total in data:
        _sweep(xs, ws, w_total, cutoff)  # warm-up
    times: list[list[float]] = [[] for _ in sizes]
    for _ in range(repetitions):
        for slot, (xs, ws, w_total) in zip(times, data):
            t0 = time.perf_counter()
            _sweep(xs, ws, w_total, cutoff)
            slot.append(time.perf_counter() - t0)

    rows = []
    for n, slot in zip(sizes, times):
        slot.sort()
        mid = len(slot) // 2
        median = slot[mid] if len(slot) % 2 else 0.5 * (slot[mid - 1] + slot[mid])
        rows.append((n, median))
    return SweepTable(("n", "median_scan_seconds"), rows)
