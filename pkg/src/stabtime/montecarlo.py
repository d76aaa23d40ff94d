"""Seeded Monte Carlo of the scaled stabilization time.

Sample ``i`` of a run with seed ``s`` is drawn from the random stream
``(s, i)`` (see :mod:`stabtime.rng`), so results depend only on
``(regime, n, samples, seed)`` and never on the number of workers.
"""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .evolution import BitString
from .limits import Chi3Half, Gaussian, LimitDistribution, NuLambda, ShiftedNuLambda
from .rng import bernoulli_bits, bernoulli_threshold, bitsliced_less_than, raw_words, words_to_bits
from .walk import stabilization_times

__all__ = [
    "Fixed",
    "Critical",
    "Threshold",
    "EmpiricalSample",
    "regime_probability",
    "sample_string",
    "run_experiment",
    "recentered",
    "limit_distribution",
    "ks_statistic",
    "empirical_pmf",
    "sample_walk_maxima",
    "manifest",
]

CHUNK = 512  # samples per task; fixed so chunking never affects output


@dataclass(frozen=True)
class Fixed:
    p: float

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie in (0, 1), got {self.p}")
        if self.p == 0.5:
            raise ValueError("p = 1/2 is the Critical regime")

    name = "fixed"


@dataclass(frozen=True)
class Critical:
    name = "critical"


@dataclass(frozen=True)
class Threshold:
    lam: float

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    name = "threshold"


Regime = Fixed | Critical | Threshold


def regime_probability(regime, n: int) -> float:
    if isinstance(regime, Fixed):
        return regime.p
    if isinstance(regime, Critical):
        return 0.5
    if isinstance(regime, Threshold):
        if not regime.lam < math.sqrt(n):
            raise ValueError(f"threshold regime needs lambda < sqrt(n); got lambda={regime.lam}, n={n}")
        return 0.5 + regime.lam / (2 * math.sqrt(n))
    raise TypeError(f"unknown regime {regime!r}")


def _scaling(regime, n: int) -> tuple[float, float]:
    """(center, scale) so that ``(T - center) / scale`` has a limit law."""
    if isinstance(regime, Fixed):
        # T is invariant under reversing and complementing, which swaps p and 1-p
        return max(regime.p, 1 - regime.p) * n, math.sqrt(n)
    return n / 2, math.sqrt(n)


def limit_distribution(regime) -> LimitDistribution:
    if isinstance(regime, Fixed):
        return Gaussian(0.0, regime.p * (1 - regime.p))
    if isinstance(regime, Critical):
        return Chi3Half()
    return NuLambda(regime.lam)


def regime_to_dict(regime) -> dict:
    out = {"name": regime.name}
    if isinstance(regime, Fixed):
        out["p"] = regime.p
    elif isinstance(regime, Threshold):
        out["lambda"] = regime.lam
    return out


@dataclass(frozen=True)
class EmpiricalSample:
    regime: object
    n: int
    seed: int
    center: float
    scale: float
    times: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)

    @property
    def scaling(self) -> dict:
        return {"center": self.center, "scale": self.scale}

    def __len__(self) -> int:
        return len(self.values)

    def to_csv(self) -> str:
        rows = ["index,scaled_value"]
        rows.extend(f"{i},{float(v)!r}" for i, v in enumerate(self.values))
        return "\n".join(rows) + "\n"


def sample_string(n: int, p, seed: int, index: int = 0) -> BitString:
    """Draw ``n`` bits, each 1 with probability ``p``, from stream (seed, index)."""
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return BitString(tuple(bernoulli_bits(seed, index, n, p).tolist()))


def _sample_bits(n: int, p, seed: int, start: int, stop: int) -> np.ndarray:
    k, j = bernoulli_threshold(p)
    groups = -(-n // 64)
    raw = np.stack([raw_words(seed, i, groups * k) for i in range(start, stop)])
    words = bitsliced_less_than(raw.reshape(stop - start, groups, k), j, k)
    return words_to_bits(words, n)


def _times_chunk(args) -> np.ndarray:
    n, p, seed, start, stop = args
    return stabilization_times(_sample_bits(n, p, seed, start, stop))


def simulate_times(n: int, p, samples: int, seed: int, workers: int = 1) -> np.ndarray:
    """Closed-form stabilization times of ``samples`` seeded strings."""
    tasks = [(n, p, seed, s, min(s + CHUNK, samples)) for s in range(0, samples, CHUNK)]
    if workers <= 1 or len(tasks) == 1:
        parts = [_times_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_times_chunk, tasks))
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def run_experiment(regime, n: int, samples: int, seed: int, workers: int = 1) -> EmpiricalSample:
    if samples <= 0:
        raise ValueError("samples must be positive")
    if n < 1:
        raise ValueError("n must be positive")
    p = regime_probability(regime, n)
    times = simulate_times(n, p, samples, seed, workers)
    center, scale = _scaling(regime, n)
    values = (times - center) / scale
    return EmpiricalSample(regime, n, seed, center, scale, times, values)


def recentered(sample: EmpiricalSample, center: float) -> EmpiricalSample:
    """Same times, new centering (e.g. ``p_n * n`` in the threshold regime)."""
    values = (sample.times - center) / sample.scale
    return EmpiricalSample(sample.regime, sample.n, sample.seed, center, sample.scale, sample.times, values)


def ks_statistic(sample, d: LimitDistribution) -> float:
    """Two-sided Kolmogorov-Smirnov distance to ``d``.

    ``max_i max(i/N - F(x_(i)), F(x_(i)) - (i-1)/N)`` over order statistics;
    ties are handled by evaluating the empirical CDF on either side of each
    distinct value, and F is computed once per distinct value.
    """
    values = sample.values if isinstance(sample, EmpiricalSample) else np.asarray(sample, dtype=float)
    x = np.sort(values)
    count = len(x)
    if not count:
        raise ValueError("empty sample")
    distinct, first = np.unique(x, return_index=True)
    last = np.append(first[1:], count)  # one past the last index of each value
    ref = np.asarray(d.cdf(distinct), dtype=float)
    d_plus = np.max(last / count - ref)
    d_minus = np.max(ref - first / count)
    return float(max(d_plus, d_minus, 0.0))


def empirical_pmf(times: np.ndarray) -> dict[int, float]:
    counts = np.bincount(np.asarray(times, dtype=np.int64))
    total = counts.sum()
    return {t: c / total for t, c in enumerate(counts) if c}


def _step_tables(width: int):
    """For every byte: (sum of the first ``width`` steps, max prefix sum)."""
    v = np.arange(256)
    steps = 2 * ((v[:, None] >> np.arange(width)) & 1) - 1
    prefix = np.cumsum(steps, axis=1)
    return prefix[:, -1].astype(np.int32), prefix.max(axis=1).astype(np.int32)


def _walk_max_chunk(args) -> np.ndarray:
    p_up, length, seed, chunk_index, count = args
    k, j = bernoulli_threshold(p_up)
    groups = -(-length // 64)
    raw = raw_words(seed, chunk_index, count * groups * k).reshape(count, groups, k)
    up = bitsliced_less_than(raw, j, k)
    as_bytes = np.ascontiguousarray(up, dtype="<u8").view(np.uint8)[:, : -(-length // 8)]
    full = length // 8
    step_sum, step_max = _step_tables(8)
    sums = step_sum[as_bytes[:, :full]]
    peaks = step_max[as_bytes[:, :full]]
    before = np.cumsum(sums, axis=1) - sums
    best = np.max(before + peaks, axis=1, initial=0)
    if length % 8:
        _, tail_max = _step_tables(length % 8)
        level = sums.sum(axis=1) if full else 0
        best = np.maximum(best, level + tail_max[as_bytes[:, full]])
    return np.maximum(best, 0)


def sample_walk_maxima(p: float, length: int, count: int, seed: int, chunk: int = 4096) -> np.ndarray:
    """``max_{0<=k<=length} W_k`` for ``count`` walks stepping down w.p. ``p``.

    Up-steps are Bernoulli(1-p) bits read 8 at a time; per-byte lookup
    tables give each byte's net displacement and highest prefix, so a walk
    of ``length`` steps costs ``length / 8`` table lookups.  Chunk ``c``
    uses stream ``(seed, c)``.
    """
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    parts = []
    for c, start in enumerate(range(0, count, chunk)):
        parts.append(_walk_max_chunk((1 - p, length, seed, c, min(chunk, count - start))))
    return np.concatenate(parts)


def manifest(sample: EmpiricalSample | None = None, **extra) -> dict:
    out = {"version": __version__}
    if sample is not None:
        out.update(
            regime=regime_to_dict(sample.regime),
            n=sample.n,
            samples=len(sample),
            seed=sample.seed,
            scaling=sample.scaling,
        )
    out.update(extra)
    return out


def timed_experiment(regime, n: int, samples: int, seed: int, workers: int = 1):
    t0 = time.perf_counter()
    sample = run_experiment(regime, n, samples, seed, workers)
    return sample, (time.perf_counter() - t0) * 1000.0


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
