"""Counter-based random streams and Bernoulli bit sampling.

Stream ``(seed, index)`` is Philox4x64-10 with key ``(seed, index)`` (both
taken mod 2^64) and counter starting at 0; the first output block is the
cipher of counter 1, then 2, ...  (numpy's convention), each block giving
four 64-bit words in order.  Any two distinct ``(seed, index)`` pairs are
independent streams, so sample ``i`` of a run never depends on how the run
was split across workers.

Bernoulli(p) bits come 64 at a time.  Let ``k`` be the least integer
``<= 53`` with ``p * 2^k`` integral (else ``k = 53``) and
``j = ceil(p * 2^k)``.  For every group of 64 bits, ``k`` consecutive words
``u_0 .. u_{k-1}`` are drawn; lane ``i`` of the group (bit ``i``, least
significant first) reads the k-bit number whose most significant bit is
lane ``i`` of ``u_0``, and the output bit is 1 iff that number is ``< j``.
So a dyadic p such as 1/2 or 3/4 costs one or two words per 64 bits and is
sampled exactly; any other p is rounded up to a multiple of 2^-53.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

__all__ = [
    "MASK64",
    "substream",
    "raw_words",
    "bernoulli_threshold",
    "bitsliced_less_than",
    "words_to_bits",
    "bernoulli_bits",
]

MASK64 = (1 << 64) - 1
MAX_PRECISION = 53


def substream(seed: int, index: int) -> np.random.Philox:
    key = np.array([seed & MASK64, index & MASK64], dtype=np.uint64)
    return np.random.Philox(key=key)


def raw_words(seed: int, index: int, count: int) -> np.ndarray:
    return substream(seed, index).random_raw(count)


def bernoulli_threshold(p) -> tuple[int, int]:
    """``(k, j)`` such that a uniform k-bit integer is ``< j`` w.p. ~p."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    den = p.denominator
    if den & (den - 1) == 0 and den.bit_length() - 1 <= MAX_PRECISION:
        k = den.bit_length() - 1
        return k, p.numerator
    k = MAX_PRECISION
    return k, math.ceil(p * (1 << k))


def bitsliced_less_than(words: np.ndarray, j: int, k: int) -> np.ndarray:
    """Per-lane ``u < j`` where ``words[..., b]`` holds bit ``k-1-b`` of ``u``."""
    lt = np.zeros(words.shape[:-1], dtype=np.uint64)
    eq = np.full(words.shape[:-1], MASK64, dtype=np.uint64)
    for b in range(k):
        u = words[..., b]
        if (j >> (k - 1 - b)) & 1:
            lt |= eq & ~u
            eq &= u
        else:
            eq &= ~u
    return lt


def words_to_bits(words: np.ndarray, n: int) -> np.ndarray:
    """Unpack ``(..., groups)`` uint64 words into ``(..., n)`` uint8 bits."""
    as_bytes = np.ascontiguousarray(words, dtype="<u8").view(np.uint8)
    bits = np.unpackbits(as_bytes, axis=-1, bitorder="little")
    return bits[..., :n]


def bernoulli_bits(seed: int, index: int, n: int, p) -> np.ndarray:
    """``n`` i.i.d. Bernoulli(p) bits from stream ``(seed, index)``."""
    k, j = bernoulli_threshold(p)
    groups = -(-n // 64)
    raw = raw_words(seed, index, groups * k).reshape(groups, k)
    return words_to_bits(bitsliced_less_than(raw, j, k), n)
