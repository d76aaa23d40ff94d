"""Random-walk view of the stabilization time.

With ``S_k = sum_{i<=k} (1 - 2 w_i)`` (up for a 0, down for a 1), a core
string of length ``n`` stabilizes after ``n/2 + max_{k>=1} S_k - S_n/2 - 1``
passes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .evolution import _as_bitstring, strip_to_core

__all__ = [
    "WalkProfile",
    "walk_profile",
    "stabilization_time_closed_form",
    "stabilization_times",
    "geometric_max_sf",
]


@dataclass(frozen=True)
class WalkProfile:
    values: tuple[int, ...]  # S_1 .. S_n
    running_max: int
    final: int
    ones: int

    @property
    def n(self) -> int:
        return len(self.values)


def walk_profile(s) -> WalkProfile:
    s = _as_bitstring(s)
    if not len(s):
        raise ValueError("walk profile needs a nonempty string")
    values = tuple(np.cumsum(1 - 2 * np.asarray(s.bits, dtype=np.int64)).tolist())
    final = values[-1]
    return WalkProfile(values, max(values), final, (len(values) - final) // 2)


def stabilization_time_closed_form(s) -> int:
    core = strip_to_core(s).core
    if not len(core):
        return 0
    prof = walk_profile(core)
    n = prof.n
    # core starts with 0 and ends with 1, so n and S_n have equal parity
    assert (n - prof.final) % 2 == 0
    twice = n + 2 * prof.running_max - prof.final - 2
    return twice // 2


def stabilization_times(bits: np.ndarray) -> np.ndarray:
    """Closed-form stabilization time of every row of a 0/1 matrix.

    Works on raw (unstripped) rows using ``T = U + max S_j - 1`` with the
    max taken over ``j`` from the first 0 to the last 1 (1-based, inclusive
    of the last 1), which is the core formula rewritten in full-string
    coordinates.  Rows that are already stable get 0.
    """
    bits = np.asarray(bits, dtype=np.uint8)
    if bits.ndim == 1:
        bits = bits[None, :]
    count, n = bits.shape
    if n == 0:
        return np.zeros(count, dtype=np.int64)
    ones = bits.sum(axis=1, dtype=np.int64)
    first_zero = np.argmax(bits == 0, axis=1)
    last_one = n - 1 - np.argmax(bits[:, ::-1] == 1, axis=1)
    stable = (ones == 0) | (ones == n) | (first_zero > last_one)
    dtype = np.int16 if n < 32000 else np.int32
    walk = np.cumsum(1 - 2 * bits.astype(dtype), axis=1, dtype=dtype)
    idx = np.arange(n)
    inside = (idx >= first_zero[:, None]) & (idx <= last_one[:, None])
    floor = np.iinfo(dtype).min
    top = np.where(inside, walk, floor).max(axis=1).astype(np.int64)
    times = ones + top - 1
    times[stable] = 0
    return times


def geometric_max_sf(p: float, m: int) -> float:
    """``P(max_k W_k >= m)`` for a walk stepping down w.p. ``p > 1/2``.

    The tail is geometric with ratio ``(1 - sqrt(1 - 4p(1-p))) / (2p)``,
    which equals ``(1 - p) / p`` on this range.
    """
    if not 0.5 < p < 1:
        raise ValueError(f"need 1/2 < p < 1, got {p}")
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    q_radical = (1 - math.sqrt(1 - 4 * p * (1 - p))) / (2 * p)
    q = (1 - p) / p
    # the radical loses ~eps/(2p-1) to cancellation as p -> 1/2
    assert abs(q - q_radical) <= max(1e-12, 1e-15 / (2 * p - 1)), (q, q_radical)
    return q**m
