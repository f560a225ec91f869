"""Robust vs ordinary mean on contaminated data, step by step.

A tight cluster around 3.0 plus one straggler: the ordinary mean chases the
straggler, the robust mean ignores it once it is further than the cutoff,
and mean shift only finds whichever local minimum its start is nearest to.
"""

import numpy as np

from robust1d import (
    brute_force_robust_mean,
    exact_robust_mean,
    make_sample_set,
    mean_shift,
    robust_error,
)

cutoff = 1.0
values = [2.5, 3.0, 3.5, 9.0]
samples = make_sample_set(values)

print(f"samples: {values},  cutoff c = {cutoff}")
print(f"ordinary mean: {np.mean(values):.4f}   <- dragged toward 9.0")

result = exact_robust_mean(samples, cutoff)
print(f"robust mean:   {result.mean:.4f}   (error {result.error:.4f}, "
      f"samples {result.window[0]}..{result.window[1]} of the sorted set)")

reference = brute_force_robust_mean(samples, cutoff)
print(f"brute force over all windows agrees: mean {reference.mean:.4f}, "
      f"error {reference.error:.4f}")

# the error landscape has two basins; mean shift is only local
for start in (2.0, 8.5):
    local = mean_shift(samples, start, cutoff)
    print(f"mean shift from {start}: {local:.4f}  "
          f"(error {robust_error(local, samples, cutoff):.4f})")

# weights let one sample count as many
weighted = make_sample_set([2.5, 3.0, 3.5, 9.0], [1.0, 1.0, 1.0, 5.0])
print(f"straggler with weight 5: robust mean "
      f"{exact_robust_mean(weighted, cutoff).mean:.4f}  "
      "(a heavy far cluster wins the window contest)")
