"""Robust mean of 1D samples under the truncated quadratic error norm.

The robust mean of samples ``x_1..x_n`` with positive weights ``w_1..w_n``
is the value ``x`` minimizing

    E(x) = sum_k w_k * min((x - x_k)**2, c**2)

where ``c`` is the truncation cutoff: residuals larger than ``c`` all pay
the same saturated cost ``c**2``, so far-away samples cannot drag the
estimate.  ``E`` is non-convex, but for sorted 1D data its global minimum
is always the weighted mean of some contiguous run of samples spanning
less than ``2c``.  :func:`exact_robust_mean` exploits this with a single
two-pointer sweep over the sorted samples, evaluating at most ``2n``
candidate windows in O(n) total via running sums, and is exact: it returns
the global minimizer, not a local one.

:func:`brute_force_robust_mean` is an O(n^2) reference that enumerates
every contiguous window and scores its weighted mean with the error
function directly; it exists to cross-check the sweep.  :func:`mean_shift`
is the classic flat-kernel fixed-point iteration, which only finds a local
minimum and serves as a baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


class EmptyInputError(ValueError):
    """No samples were provided."""


class NonFiniteError(ValueError):
    """A value, weight, or query point is NaN or infinite."""


class BadWeightError(ValueError):
    """A weight is non-positive or the weight vector has the wrong length."""


class TooLargeError(ValueError):
    """Input exceeds the size limit of the brute-force reference."""


@dataclass(frozen=True)
class SampleSet:
    """Sorted 1D samples with aligned positive weights.

    Build via :func:`make_sample_set`, which validates and co-sorts the
    inputs.  ``values`` is non-decreasing and every weight is positive and
    finite; all downstream estimators rely on this.
    """

    values: np.ndarray
    weights: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    @property
    def total_weight(self) -> float:
        return float(np.sum(self.weights))


@dataclass(frozen=True)
class RobustMeanResult:
    """Minimizer of the truncated quadratic error.

    ``window`` is the 1-based inclusive index pair ``(a, b)`` of the run of
    sorted samples whose weighted mean attains the minimum; ``error`` is
    the error function evaluated at ``mean``.
    """

    mean: float
    error: float
    window: tuple[int, int]


def _validate_cutoff(cutoff: float) -> float:
    cutoff = float(cutoff)
    if not math.isfinite(cutoff) or cutoff <= 0.0:
        raise ValueError(f"cutoff must be a positive finite number, got {cutoff!r}")
    return cutoff


def make_sample_set(values, weights=None) -> SampleSet:
    """Validate and co-sort samples (and optional weights) ascending by value.

    Weights default to 1.0.  The sort is stable, so equal values keep their
    input order and their own weights.

    Raises
    ------
    EmptyInputError
        ``values`` is empty.
    NonFiniteError
        any value or weight is NaN or infinite.
    BadWeightError
        a weight is <= 0 or ``weights`` has a different length.
    """
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1:
        vals = vals.reshape(-1)
    if vals.size == 0:
        raise EmptyInputError("empty sample set: need at least one value")
    if not np.all(np.isfinite(vals)):
        raise NonFiniteError("values must be finite (no NaN or infinity)")

    if weights is None:
        wts = np.ones_like(vals)
    else:
        wts = np.asarray(weights, dtype=np.float64).reshape(-1)
        if wts.shape != vals.shape:
            raise BadWeightError(
                f"got {wts.size} weights for {vals.size} values"
            )
        if not np.all(np.isfinite(wts)):
            raise NonFiniteError("weights must be finite (no NaN or infinity)")
        if np.any(wts <= 0.0):
            raise BadWeightError("weights must be strictly positive")

    order = np.argsort(vals, kind="stable")
    return SampleSet(values=vals[order], weights=wts[order])


def robust_error(x: float, samples: SampleSet, cutoff: float) -> float:
    """Evaluate ``sum_k w_k * min((x - x_k)**2, c**2)`` at a point ``x``."""
    x = float(x)
    if not math.isfinite(x):
        raise NonFiniteError(f"query point must be finite, got {x!r}")
    c = _validate_cutoff(cutoff)
    resid = x - samples.values
    return float(np.dot(samples.weights, np.minimum(resid * resid, c * c)))


def _sweep(xs: list, ws: list, w_total: float, cutoff: float, trace=None):
    """Two-pointer scan over pre-sorted value/weight lists.

    Returns ``(mean, a, b)`` of the best window, 0-based inclusive.  This
    is the O(n) core that :func:`exact_robust_mean` wraps and the runtime
    benchmark times; ``trace`` optionally collects the running window state
    ``(a, b, s1, s2, w_in)`` at every candidate evaluation.
    """
    n = len(xs)
    two_c = 2.0 * cutoff
    c_sq = cutoff * cutoff

    a = 0
    b = 0
    s1 = ws[0] * xs[0]
    s2 = ws[0] * xs[0] * xs[0]
    w_in = ws[0]

    best_e = math.inf
    best_mu = xs[0]
    best_a = 0
    best_b = 0

    # a <= b fails only on the step after the window emptied; the next
    # iteration always refills it, so every a gets at least one candidate.
    while a < n:
        if a <= b:
            mu = s1 / w_in
            # The weighted window mean lies in [x_a, x_b]; clamping rejects
            # accumulation drift and keeps constant windows exact.
            if mu < xs[a]:
                mu = xs[a]
            elif mu > xs[b]:
                mu = xs[b]
            q = s2 - mu * s1
            if q < 0.0:
                q = 0.0
            e = q + (w_total - w_in) * c_sq
            if e < best_e:
                best_e = e
                best_mu = mu
                best_a = a
                best_b = b
            if trace is not None:
                trace.append((a, b, s1, s2, w_in))
        if b < n - 1 and xs[b + 1] - xs[a] < two_c:
            b += 1
            xv = xs[b]
            wv = ws[b]
            s1 += wv * xv
            s2 += wv * xv * xv
            w_in += wv
        else:
            xv = xs[a]
            wv = ws[a]
            s1 -= wv * xv
            s2 -= wv * xv * xv
            w_in -= wv
            a += 1

    return best_mu, best_a, best_b


def exact_robust_mean(samples: SampleSet, cutoff: float, _trace=None) -> RobustMeanResult:
    """Global minimizer of the truncated quadratic error, in O(n).

    Sweeps a feasible window ``[a, b]`` (samples spanning < ``2c``) left to
    right over the sorted data.  Every maximal window (one that cannot be
    grown on both sides) and every window touching the data boundary is
    visited, and for each visited window the running weighted sums give its
    mean ``mu`` and an error bound ``q + w_out * c**2`` that is tight
    exactly at the windows that can host the global minimum.  The smallest
    bound therefore equals ``min_x E(x)`` and its ``mu`` attains it.

    Ties between windows with equal bounds keep the first window in sweep
    order (smallest ``a``, then smallest ``b``), making results
    deterministic.  The running-sum bound drives the selection only; the
    reported error is the error function re-evaluated at the winning mean,
    which is immune to the cancellation the ``s2 - mu * s1`` form suffers
    on nearly constant windows.

    ``_trace`` is a testing hook: pass a list to collect the running window
    state ``(a, b, s1, s2, w_in)`` at every candidate evaluation.
    """
    c = _validate_cutoff(cutoff)
    xs = samples.values.tolist()
    ws = samples.weights.tolist()
    mean, a, b = _sweep(xs, ws, math.fsum(ws), c, _trace)
    return RobustMeanResult(
        mean=mean,
        error=robust_error(mean, samples, c),
        window=(a + 1, b + 1),
    )


def brute_force_robust_mean(
    samples: SampleSet, cutoff: float, limit: int = 1000
) -> RobustMeanResult:
    """O(n^2) reference estimator enumerating all contiguous windows.

    Computes the weighted mean of every contiguous window of the sorted
    samples and evaluates the error function there directly, returning the
    smallest.  Windows are scanned in the same (a, then b) order as the
    sweep, with the same first-wins tie rule.  Intended as an independent
    cross-check of :func:`exact_robust_mean`; refuses inputs larger than
    ``limit`` to bound the quadratic cost.
    """
    c = _validate_cutoff(cutoff)
    n = len(samples)
    if n > limit:
        raise TooLargeError(f"n={n} exceeds brute-force limit {limit}")

    vals = samples.values
    wts = samples.weights
    c_sq = c * c

    idx_a, idx_b = np.triu_indices(n)  # row-major: lexicographic (a, b)
    p1 = np.concatenate(([0.0], np.cumsum(wts * vals)))
    pw = np.concatenate(([0.0], np.cumsum(wts)))
    means = (p1[idx_b + 1] - p1[idx_a]) / (pw[idx_b + 1] - pw[idx_a])
    np.clip(means, vals[idx_a], vals[idx_b], out=means)

    errors = np.empty(means.size)
    block = max(1, 1_000_000 // n)
    for lo in range(0, means.size, block):
        m = means[lo : lo + block, None]
        resid = m - vals[None, :]
        errors[lo : lo + block] = np.minimum(resid * resid, c_sq) @ wts

    k = int(np.argmin(errors))  # first occurrence wins ties
    return RobustMeanResult(
        mean=float(means[k]),
        error=float(errors[k]),
        window=(int(idx_a[k]) + 1, int(idx_b[k]) + 1),
    )


def _mean_shift_step(samples: SampleSet, x: float, cutoff: float) -> float:
    """One flat-kernel update: weighted mean of samples with |x_k - x| <= c.

    Returns ``x`` unchanged when no sample is in range.
    """
    vals = samples.values
    lo = int(np.searchsorted(vals, x - cutoff, side="left"))
    hi = int(np.searchsorted(vals, x + cutoff, side="right"))
    if lo == hi:
        return x
    w = samples.weights[lo:hi]
    return float(np.dot(w, vals[lo:hi]) / np.sum(w))


def mean_shift(
    samples: SampleSet,
    start: float,
    cutoff: float,
    max_iter: int = 500,
    tol: float = 1e-12,
) -> float:
    """Flat-kernel mean-shift iteration from ``start``.

    Repeatedly replaces ``x`` with the weighted mean of the samples within
    ``cutoff`` of it, stopping at a fixed point (step smaller than ``tol``)
    or after ``max_iter`` iterations.  The error function is non-increasing
    along the iterates, but the limit is only a local minimum; compare with
    :func:`exact_robust_mean` for the global one.
    """
    x = float(start)
    if not math.isfinite(x):
        raise NonFiniteError(f"start must be finite, got {start!r}")
    c = _validate_cutoff(cutoff)
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter}")
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")

    for _ in range(max_iter):
        x_next = _mean_shift_step(samples, x, c)
        if abs(x_next - x) < tol:
            return x_next
        x = x_next
    return x
