"""Exact finite-n laws of the stabilization time.

``mu_n`` is the law of T for n i.i.d. bits (1 with probability p) and
``mu~_r`` the law for strings ``0 x 1`` of length r whose r-2 middle bits are
i.i.d.  Stripping leading 1s and trailing 0s gives

    mu_n = c0 * delta_0 + sum_{r=2..n} c[r] * mu~_r

where ``r`` is the core length.  Rational inputs give exact ``Fraction``
weights; float inputs (DP only) give float weights.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

from .walk import stabilization_times

__all__ = [
    "Pmf",
    "CoefficientVector",
    "CapExceededError",
    "as_probability",
    "threshold_probability",
    "law_by_enumeration",
    "special_law_by_enumeration",
    "special_law_by_dp",
    "special_laws_by_dp",
    "mixture_coefficients",
    "mixture_coefficients_float",
    "law_by_mixture",
    "tail_mass",
]

ENUMERATION_CAP = 20
SPECIAL_ENUMERATION_CAP = 22
DP_CAP_RATIONAL = 500
DP_CAP_FLOAT = 5000

Weight = Union[Fraction, float]


class CapExceededError(ValueError):
    pass


@dataclass(frozen=True)
class Pmf:
    """Probability mass function on ``offset, offset+1, ...``.

    Stored in canonical form: no zero weight at either end, so two Pmfs of
    the same law compare equal.
    """

    offset: int
    weights: tuple

    def __post_init__(self):
        w = list(self.weights)
        off = self.offset
        while w and w[0] == 0:
            w.pop(0)
            off += 1
        while w and w[-1] == 0:
            w.pop()
        if any(x < 0 for x in w):
            raise ValueError("negative weight")
        object.__setattr__(self, "weights", tuple(w))
        object.__setattr__(self, "offset", off if w else 0)

    @classmethod
    def from_dict(cls, mapping) -> "Pmf":
        if not mapping:
            return cls(0, ())
        lo, hi = min(mapping), max(mapping)
        zero = 0.0 if any(isinstance(v, float) for v in mapping.values()) else Fraction(0)
        return cls(lo, tuple(mapping.get(t, zero) for t in range(lo, hi + 1)))

    @property
    def exact(self) -> bool:
        return all(isinstance(w, (Fraction, int)) for w in self.weights)

    @property
    def support(self) -> range:
        return range(self.offset, self.offset + len(self.weights))

    def __getitem__(self, t: int):
        i = t - self.offset
        if 0 <= i < len(self.weights):
            return self.weights[i]
        return Fraction(0) if self.exact else 0.0

    def items(self) -> Iterator[tuple[int, Weight]]:
        return zip(self.support, self.weights)

    def as_dict(self) -> dict:
        return {t: w for t, w in self.items() if w != 0}

    def total(self):
        return sum(self.weights, Fraction(0) if self.exact else 0.0)

    def mean(self):
        return sum((t * w for t, w in self.items()), Fraction(0) if self.exact else 0.0)

    def to_float(self) -> "Pmf":
        return Pmf(self.offset, tuple(float(w) for w in self.weights))

    def to_csv(self) -> str:
        """``t,weight_num,weight_den`` rows when exact, else ``t,weight``."""
        if self.exact:
            lines = ["t,weight_num,weight_den"]
            for t, w in self.items():
                w = Fraction(w)
                lines.append(f"{t},{w.numerator},{w.denominator}")
        else:
            lines = ["t,weight"]
            lines.extend(f"{t},{float(w)!r}" for t, w in self.items())
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "Pmf":
        rows = [line.split(",") for line in text.strip().splitlines()]
        header, body = rows[0], rows[1:]
        if header == ["t", "weight_num", "weight_den"]:
            return cls.from_dict({int(t): Fraction(int(a), int(b)) for t, a, b in body})
        if header == ["t", "weight"]:
            return cls.from_dict({int(t): float(w) for t, w in body})
        raise ValueError(f"unknown Pmf CSV header {header}")


@dataclass(frozen=True)
class CoefficientVector:
    """Mixture weights: ``c0`` on delta_0 and ``c[r]`` on mu~_r, r = 2..n.

    Stored as numerators ``(c0, c[2], ..., c[n])`` over one denominator:
    an integer for exact vectors (Fractions are built on access, since
    normalizing each one is costly at large n), 1.0 for float vectors.
    """

    n: int
    numerators: tuple
    denominator: int | float = 1.0

    @property
    def exact(self) -> bool:
        return isinstance(self.denominator, int)

    def _weight(self, num):
        return Fraction(num, self.denominator) if self.exact else num / self.denominator

    @property
    def c0(self) -> Weight:
        return self._weight(self.numerators[0])

    @property
    def c(self) -> dict:
        return {r: self._weight(v) for r, v in enumerate(self.numerators[1:], 2)}

    def total(self):
        return self._weight(sum(self.numerators))


def as_probability(p) -> Fraction:
    """Coerce to an exact rational strictly inside (0, 1).

    Floats are taken at their exact binary value.
    """
    if isinstance(p, str):
        p = Fraction(p)
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    return p


def threshold_probability(n: int, lam: float, max_denominator: int | None = None) -> Fraction:
    """Rational stand-in for ``1/2 + lam / (2 sqrt(n))``.

    Exact when that number is rational at the given precision (e.g. n=10^4,
    lam=1 gives 101/200); otherwise the nearest fraction with denominator at
    most ``max_denominator`` (default 10^6).  Exact laws computed from it are
    exact relative to this rational, not to the irrational p_n.
    """
    root = math.isqrt(n)
    if root * root == n and Fraction(lam).denominator == 1:
        p = Fraction(1, 2) + Fraction(int(lam), 2 * root)
    else:
        p = Fraction(0.5 + lam / (2 * math.sqrt(n))).limit_denominator(max_denominator or 10**6)
    return as_probability(p)


def _all_strings(n: int) -> np.ndarray:
    codes = np.arange(1 << n, dtype=np.int64)
    return ((codes[:, None] >> np.arange(n)) & 1).astype(np.uint8)


def _exact_from_counts(counts: np.ndarray, p: Fraction, free_bits: int) -> Pmf:
    """Weights from a table ``counts[ones, t]`` of strings with ``free_bits`` random bits."""
    a, b = p.numerator, p.denominator
    denom = b**free_bits
    totals = {}
    for ones, row in enumerate(counts):
        nz = np.nonzero(row)[0]
        if not len(nz):
            continue
        w = a**ones * (b - a) ** (free_bits - ones)
        for t in nz:
            totals[int(t)] = totals.get(int(t), 0) + int(row[t]) * w
    return Pmf.from_dict({t: Fraction(v, denom) for t, v in totals.items()})


def law_by_enumeration(n: int, p, cap: int = ENUMERATION_CAP) -> Pmf:
    """Law of T over all 2^n strings, using the closed-form time of each."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the enumeration cap {cap}; use the DP mixture or Monte Carlo")
    p = as_probability(p)
    bits = _all_strings(n)
    times = stabilization_times(bits)
    ones = bits.sum(axis=1)
    counts = np.zeros((n + 1, n), dtype=np.int64)
    np.add.at(counts, (ones, times), 1)
    return _exact_from_counts(counts, p, n)


def special_law_by_enumeration(r: int, p, cap: int = SPECIAL_ENUMERATION_CAP) -> Pmf:
    """Law of T over strings ``0 x 1`` of length r, weighted by the middle bits."""
    if r < 2:
        raise ValueError(f"special strings need r >= 2, got {r}")
    if r > cap:
        raise CapExceededError(f"r={r} exceeds the enumeration cap {cap}; use special_law_by_dp")
    p = as_probability(p)
    middle = _all_strings(r - 2)
    count = middle.shape[0]
    bits = np.hstack([np.zeros((count, 1), np.uint8), middle, np.ones((count, 1), np.uint8)])
    times = stabilization_times(bits)
    ones = middle.sum(axis=1)
    counts = np.zeros((r - 1, r), dtype=np.int64)
    np.add.at(counts, (ones, times), 1)
    return _exact_from_counts(counts, p, r - 2)


def _dp_weights(p):
    """(down, up, base): step weights with ``down + up == base``."""
    if isinstance(p, float):
        if not 0 < p < 1:
            raise ValueError(f"p must lie in (0, 1), got {p}")
        return p, 1.0 - p, 1.0
    p = as_probability(p)
    return p.numerator, p.denominator - p.numerator, p.denominator


def special_laws_by_dp(r_max: int, p) -> Iterator[tuple[int, Pmf]]:
    """Yield ``(r, mu~_r)`` for r = 2..r_max from one forward pass.

    The middle bits drive a walk W (a 1-bit steps down w.p. p, a 0-bit up).
    State after k steps is ``(d, m)`` with m the running max and
    ``d = m - W_k >= 0``; a string of length r = k + 2 then has
    ``T = r/2 + m - W_k/2 = (r + m + d) / 2``.  Exact mode carries integer
    numerators over ``base**k``.
    """
    down, up, base = _dp_weights(p)
    exact = not isinstance(down, float)
    size = r_max  # d, m <= k <= r_max - 2
    dtype = object if exact else np.float64
    layer = np.zeros((size, size), dtype=dtype)
    layer[0, 0] = 1 if exact else 1.0
    denom = 1
    for k in range(0, r_max - 1):
        r = k + 2
        yield r, _read_off(layer, k, r, denom, exact)
        if r == r_max:
            break
        nxt = np.zeros_like(layer)
        live = layer[: k + 1, : k + 1]
        nxt[1 : k + 2, : k + 1] += live * down  # down: d+1
        nxt[: k, : k + 1] += live[1:, :] * up  # up below the max: d-1
        nxt[0, 1 : k + 2] += live[0, :] * up  # up at the max: m+1
        layer = nxt
        denom *= base


def _read_off(layer, k, r, denom, exact) -> Pmf:
    live = layer[: k + 1, : k + 1]
    # hist[s] collects states with m + d == s
    hist = np.zeros(2 * k + 1, dtype=layer.dtype)
    for d in range(k + 1):
        hist[d : d + k + 1] += live[d]
    out = {}
    for s, w in enumerate(hist):
        if w:
            assert (r + s) % 2 == 0
            out[(r + s) // 2] = Fraction(int(w), denom) if exact else float(w)
    return Pmf.from_dict(out)


def special_law_by_dp(r: int, p, cap: int | None = None) -> Pmf:
    if r < 2:
        raise ValueError(f"special strings need r >= 2, got {r}")
    if cap is None:
        cap = DP_CAP_FLOAT if isinstance(p, float) else DP_CAP_RATIONAL
    if r > cap:
        raise CapExceededError(f"r={r} exceeds the DP cap {cap}")
    for rr, law in special_laws_by_dp(r, p):
        if rr == r:
            return law
    raise AssertionError("unreachable")


def mixture_coefficients(n: int, p) -> CoefficientVector:
    """Exact coefficients of delta_0 and each mu~_r in mu_n.

    With e = n - r + 2:
        p != 1/2:  c0 = (p^{n+1} - q^{n+1}) / (2p - 1),
                   c[r] = (q p^e - p q^e) / (2p - 1)
        p == 1/2:  c0 = (n + 1) / 2^n,  c[r] = (n - r + 1) / 2^e
    where q = 1 - p.  Everything is put over one integer denominator so the
    normalization check is an integer identity.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    p = as_probability(p)
    a, b = p.numerator, p.denominator
    q = b - a
    if 2 * a == b:
        # over 2^n: c0 -> n+1, c[r] -> (n-r+1) 2^(r-2)
        denom = 2**n
        num0 = n + 1
        nums = {r: (n - r + 1) << (r - 2) for r in range(2, n + 1)}
    else:
        # over b^n (2a - b): c0 -> a^{n+1} - q^{n+1},
        # c[r] -> (q a^e - a q^e) b^{r-2}
        denom = b**n * (2 * a - b)
        num0 = a ** (n + 1) - q ** (n + 1)
        nums = {}
        a_pow, q_pow, b_pow = a**n, q**n, 1  # e = n at r = 2
        for r in range(2, n + 1):
            nums[r] = (q * a_pow - a * q_pow) * b_pow
            a_pow //= a
            q_pow //= q
            b_pow *= b
    if num0 + sum(nums.values()) != denom:
        raise AssertionError(f"mixture coefficients do not sum to 1 (n={n}, p={p})")
    return CoefficientVector(n, (num0, *(nums[r] for r in range(2, n + 1))), denom)


def mixture_coefficients_float(n: int, p: float) -> CoefficientVector:
    """Float-mode coefficients via the probability of each (leading, trailing) split.

    ``c[r]`` is ``p q`` times ``G(n - r)`` where ``G(L) = sum_{i=0..L} p^i q^(L-i)``
    is the total probability of the ``L`` stripped bits (some 1s, then 0s),
    and ``c0 = G(n)``.  ``G`` follows the all-positive recurrence
    ``G(L) = q G(L-1) + p^L``, so no cancellation occurs near p = 1/2.
    """
    if not 0 < p < 1:
        raise ValueError(f"p must lie in (0, 1), got {p}")
    q = 1.0 - p
    g = np.empty(n + 1)
    g[0] = 1.0
    p_pow = 1.0
    for length in range(1, n + 1):
        p_pow *= p
        g[length] = q * g[length - 1] + p_pow
    c = (p * q * g[n - 2 :: -1]).tolist() if n >= 2 else []
    return CoefficientVector(n, (float(g[n]), *c))


def tail_mass(coeffs: CoefficientVector, cutoff: int) -> float:
    """``sum of c[r]`` over ``r > n - cutoff``."""
    lo = max(coeffs.n - cutoff, 1)
    return coeffs._weight(sum(coeffs.numerators[lo:]))


def law_by_mixture(n: int, p, cap: int | None = None) -> Pmf:
    """Assemble mu_n from the mixture coefficients and the DP special laws."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if cap is None:
        cap = DP_CAP_RATIONAL
    if n > cap:
        raise CapExceededError(f"n={n} exceeds the DP cap {cap}")
    p = as_probability(p)
    coeffs = mixture_coefficients(n, p)
    c = coeffs.c
    total = {0: coeffs.c0}
    if n >= 2:
        for r, law in special_laws_by_dp(n, p):
            w = c[r]
            for t, x in law.items():
                total[t] = total.get(t, 0) + w * x
    return Pmf.from_dict(total)
