"""Limit laws of the scaled stabilization time.

* ``Gaussian(0, p(1-p))`` for fixed ``p > 1/2`` (centered at ``pn``),
* ``Chi3Half``, half the norm of a standard 3-d Gaussian, at ``p = 1/2``,
* ``NuLambda(lam)`` when ``p_n = 1/2 + lam / (2 sqrt n)``, with density
  ``4 sqrt2 / (lam sqrt pi) e^{-lam^2/2} sinh(2 lam x) x e^{-2x^2}``,
* ``ShiftedNuLambda(lam)``, the same law moved left by ``lam / 2``.

Densities are closed form (evaluated in log space where lam enters); CDFs
other than the Gaussian are adaptive Gauss-Kronrod quadrature of the
density.  :func:`pdf_via_line_integral` recomputes the chi/nu densities
from the Brownian joint law of (max, endpoint) as an independent check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

__all__ = [
    "LimitDistribution",
    "Gaussian",
    "Chi3Half",
    "NuLambda",
    "ShiftedNuLambda",
    "pdf",
    "logpdf",
    "cdf",
    "total_mass",
    "mean",
    "bm_max_joint_pdf",
    "pdf_via_line_integral",
    "QUAD_EPSABS",
]

QUAD_EPSABS = 1e-10
QUAD_LIMIT = 10_000
_LOG_CHI = math.log(8 * math.sqrt(2) / math.sqrt(math.pi))
# densities below e^-750 underflow; 20 half-widths covers that for e^{-2x^2} tails
_REACH = 20.0


def _logsinh(z):
    """log(sinh(z)) for z > 0 without overflow."""
    z = np.asarray(z, dtype=float)
    return z + np.log(-np.expm1(-2 * z)) - math.log(2)


class LimitDistribution:
    """Base class: subclasses supply ``logpdf`` and an effective window."""

    lower = -math.inf  # left end of the support

    def logpdf(self, x):
        raise NotImplementedError

    def pdf(self, x):
        return np.exp(self.logpdf(x))

    def center(self) -> float:
        raise NotImplementedError

    def window(self) -> tuple[float, float]:
        """Interval holding all but a negligible (< e^-700) share of mass."""
        c = self.center()
        return max(self.lower, c - _REACH), c + _REACH

    def _integrate(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        f = lambda t: float(self.pdf(t))
        c = self.center()
        points = [c] if a < c < b else None
        val, _ = integrate.quad(f, a, b, epsabs=QUAD_EPSABS, epsrel=1e-12, limit=QUAD_LIMIT, points=points)
        return val

    def cdf(self, x):
        """CDF by quadrature; arrays are integrated piecewise between sorted points."""
        scalar = np.ndim(x) == 0
        xs = np.atleast_1d(np.asarray(x, dtype=float))
        lo, hi = self.window()
        clipped = np.clip(xs, lo, hi)
        order = np.argsort(clipped, kind="stable")
        out = np.empty_like(xs)
        acc, prev = 0.0, lo
        for i in order:
            cur = clipped[i]
            acc += self._integrate(prev, cur)
            prev = cur
            out[i] = acc
        out = np.clip(out, 0.0, 1.0)
        out[xs <= lo] = 0.0
        return float(out[0]) if scalar else out

    def ppf(self, u):
        """Inverse CDF: table lookup, then Newton steps on the quadrature CDF."""
        lo, hi = self.window()
        c = self.center()
        grid = np.unique(np.concatenate([np.linspace(lo, hi, 1001), np.linspace(c - 4, c + 4, 2001)]))
        grid = grid[(grid >= lo) & (grid <= hi)]
        table = self.cdf(grid)
        u = np.asarray(u, dtype=float)
        x = np.interp(u, table, grid)
        for _ in range(2):
            dens = self.pdf(x)
            safe = dens > 1e-12
            x = x - np.where(safe, (self.cdf(x) - u) / np.where(safe, dens, 1.0), 0.0)
        return x

    def expected_value(self) -> float:
        lo, hi = self.window()
        f = lambda t: t * float(self.pdf(t))
        c = self.center()
        val, _ = integrate.quad(f, lo, hi, epsabs=QUAD_EPSABS, limit=QUAD_LIMIT, points=[c] if lo < c < hi else None)
        return val


@dataclass(frozen=True)
class Gaussian(LimitDistribution):
    mean: float = 0.0
    variance: float = 1.0

    def __post_init__(self):
        if not self.variance > 0:
            raise ValueError(f"variance must be positive, got {self.variance}")

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        return -((x - self.mean) ** 2) / (2 * self.variance) - 0.5 * math.log(2 * math.pi * self.variance)

    def center(self) -> float:
        return self.mean

    def window(self):
        sd = math.sqrt(self.variance)
        return self.mean - 40 * sd, self.mean + 40 * sd

    def cdf(self, x):
        z = (np.asarray(x, dtype=float) - self.mean) / math.sqrt(2 * self.variance)
        out = 0.5 * special.erfc(-z)
        return float(out) if np.ndim(out) == 0 else out

    def expected_value(self) -> float:
        return self.mean


@dataclass(frozen=True)
class Chi3Half(LimitDistribution):
    lower = 0.0

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = _LOG_CHI + 2 * np.log(np.where(x > 0, x, 1.0)) - 2 * x**2
        return np.where(x > 0, val, -np.inf)

    def center(self) -> float:
        return 1 / math.sqrt(2)


@dataclass(frozen=True)
class NuLambda(LimitDistribution):
    lam: float = 1.0
    lower = 0.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam} (use Chi3Half for the lambda -> 0 limit)")

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        lam = self.lam
        pos = np.where(x > 0, x, 1.0)
        const = math.log(4 * math.sqrt(2) / (lam * math.sqrt(math.pi))) - lam**2 / 2
        val = const + _logsinh(2 * lam * pos) + np.log(pos) - 2 * pos**2
        return np.where(x > 0, val, -np.inf)

    def center(self) -> float:
        # mode region: lam/2 for large lam, ~1/sqrt2 for small
        return max(self.lam / 2, 1 / math.sqrt(2))


@dataclass(frozen=True)
class ShiftedNuLambda(LimitDistribution):
    """``NuLambda(lam) - lam/2``; tends to ``Gaussian(0, 1/4)`` as lam grows."""

    lam: float = 1.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError(f"lambda must be positive, got {self.lam}")

    @property
    def shift(self) -> float:
        return -self.lam / 2

    @property
    def lower(self) -> float:
        return self.shift

    def logpdf(self, x):
        return NuLambda(self.lam).logpdf(np.asarray(x, dtype=float) - self.shift)

    def center(self) -> float:
        return NuLambda(self.lam).center() + self.shift


def logpdf(d: LimitDistribution, x):
    return d.logpdf(x)


def pdf(d: LimitDistribution, x):
    out = d.pdf(x)
    return float(out) if np.ndim(out) == 0 else out


def cdf(d: LimitDistribution, x):
    return d.cdf(x)


def total_mass(d: LimitDistribution) -> float:
    """Integral of the density over its effective window."""
    lo, hi = d.window()
    return d._integrate(lo, hi)


def mean(d: LimitDistribution) -> float:
    return d.expected_value()


def bm_max_joint_pdf(b, a, T: float = 1.0):
    """Joint density of (max_{s<=T} B_s, B_T) at (b, a) by reflection.

    ``2 (2b - a) / (sqrt(2 pi) T^{3/2}) exp(-(2b - a)^2 / (2T))`` on
    ``b >= max(a, 0)``, zero elsewhere.
    """
    if not T > 0:
        raise ValueError(f"T must be positive, got {T}")
    b = np.asarray(b, dtype=float)
    a = np.asarray(a, dtype=float)
    u = 2 * b - a
    val = 2 * u / (math.sqrt(2 * math.pi) * T**1.5) * np.exp(-(u**2) / (2 * T))
    out = np.where((b >= a) & (b >= 0), val, 0.0)
    return float(out) if out.ndim == 0 else out


def pdf_via_line_integral(x: float, lam: float = 0.0) -> float:
    """Density of ``max B - B_1/2`` (drift ``lam``) at ``x`` by a line integral.

    Integrates the driftless joint density along ``b = y/2 + x``,
    ``y in [-2x, 2x]``, with the likelihood ratio ``exp(lam y - lam^2/2)``.
    """
    if lam < 0:
        raise ValueError(f"lambda must be non-negative, got {lam}")
    if x <= 0:
        return 0.0

    def integrand(y):
        weight = math.exp(lam * y - lam**2 / 2)
        return bm_max_joint_pdf(y / 2 + x, y, 1.0) * weight

    val, _ = integrate.quad(integrand, -2 * x, 2 * x, epsabs=1e-13, epsrel=1e-12, limit=QUAD_LIMIT)
    return val
