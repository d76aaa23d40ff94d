"""
Sampling the scaled stabilization time
======================================

Seeded samples in the three regimes, compared with their limits by the
KS distance.  The distance shrinks roughly like 1/sqrt(n): the exact law
itself sits two to three units of 1/sqrt(n) from its limit, so sampling
noise is not the bottleneck at these sizes.
"""

import numpy as np

from stabtime.montecarlo import Critical, Fixed, Threshold, ks_statistic, limit_distribution, run_experiment

samples = 20_000
for regime in (Critical(), Fixed(0.75), Threshold(1.0)):
    d = limit_distribution(regime)
    for n in (100, 1_000, 10_000):
        sample = run_experiment(regime, n, samples, seed=1)
        ks = ks_statistic(sample, d)
        print(f"{regime.name:9s} n={n:6d}  KS={ks:.4f}  KS*sqrt(n)={ks * np.sqrt(n):.2f}")

# the same seed always gives the same times, however the work is split
a = run_experiment(Critical(), 1000, 2000, seed=5)
b = run_experiment(Critical(), 1000, 2000, seed=5, workers=2)
print("\nworker split changes nothing:", np.array_equal(a.times, b.times))
