"""Empirical-distribution machinery: ECDF, KS tests, dominance, mean CIs.

All weak-convergence claims in the package reduce to confronting sorted
Monte Carlo samples with either a closed-form CDF (one-sample KS), another
sample (two-sample KS), or a pointwise ECDF ordering with a
Dvoretzky-Kiefer-Wolfowitz band (stochastic dominance).  P-values use the
asymptotic Kolmogorov series; acceptance thresholds are stated directly on
KS distances, so p-value precision is secondary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "EmpiricalDistribution",
    "ecdf",
    "ks_two_sample",
    "ks_one_sample",
    "dominance_check",
    "DominanceResult",
    "mean_ci",
    "kolmogorov_sf",
    "normal_cdf",
    "dkw_band",
]


@dataclass(frozen=True)
class EmpiricalDistribution:
    """Sorted sample carrier; construction sorts a copy."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.sort(np.asarray(self.samples, dtype=np.float64))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("samples must be a nonempty 1-d array")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)

    @property
    def count(self) -> int:
        return int(self.samples.size)


def _as_sorted(d) -> np.ndarray:
    if isinstance(d, EmpiricalDistribution):
        return d.samples
    return EmpiricalDistribution(np.asarray(d)).samples


def ecdf(d, x) -> float | np.ndarray:
    """Right-continuous empirical CDF: fraction of samples ``<= x``."""
    s = _as_sorted(d)
    out = np.searchsorted(s, x, side="right") / s.size
    return float(out) if np.isscalar(x) else out


def kolmogorov_sf(lam: float) -> float:
    """Asymptotic Kolmogorov survival function ``Q(lam)``.

    Alternating series for moderate/large ``lam``, the theta-dual form for
    small ``lam`` where the alternating series converges slowly.
    """
    if lam <= 0.0:
        return 1.0
    if lam < 0.4:
        # Q = 1 - sqrt(2 pi)/lam * sum exp(-(2k-1)^2 pi^2 / (8 lam^2))
        tot = 0.0
        for k in range(1, 20):
            term = math.exp(-((2 * k - 1) ** 2) * math.pi**2 / (8.0 * lam * lam))
            tot += term
            if term < 1e-18:
                break
        return min(1.0, max(0.0, 1.0 - math.sqrt(2.0 * math.pi) / lam * tot))
    tot = 0.0
    for k in range(1, 200):
        term = 2.0 * (-1.0) ** (k - 1) * math.exp(-2.0 * k * k * lam * lam)
        tot += term
        if abs(term) < 1e-18:
            break
    return min(1.0, max(0.0, tot))


def ks_two_sample(a, b) -> tuple[float, float]:
    """Two-sample KS statistic and asymptotic p-value.

    The statistic is the sup-distance between the two ECDFs, computed by a
    merge scan; the p-value uses effective size ``n_a n_b / (n_a + n_b)``.
    """
    sa, sb = _as_sorted(a), _as_sorted(b)
    na, nb = sa.size, sb.size
    grid = np.concatenate([sa, sb])
    fa = np.searchsorted(sa, grid, side="right") / na
    fb = np.searchsorted(sb, grid, side="right") / nb
    stat = float(np.max(np.abs(fa - fb)))
    n_eff = na * nb / (na + nb)
    return stat, kolmogorov_sf(math.sqrt(n_eff) * stat)


def ks_one_sample(d, cdf: Callable[[np.ndarray], np.ndarray]) -> tuple[float, float]:
    """One-sample KS statistic against a callable CDF, with p-value."""
    s = _as_sorted(d)
    n = s.size
    f = np.asarray(cdf(s), dtype=np.float64)
    hi = np.arange(1, n + 1) / n
    lo = np.arange(0, n) / n
    stat = float(max(np.max(hi - f), np.max(f - lo)))
    return stat, kolmogorov_sf(math.sqrt(n) * stat)


def dkw_band(n: int, alpha: float) -> float:
    """Dvoretzky-Kiefer-Wolfowitz uniform ECDF half-width at level alpha."""
    return math.sqrt(math.log(2.0 / alpha) / (2.0 * n))


@dataclass(frozen=True)
class DominanceResult:
    dominates: bool
    worst_margin: float  # max over x of ECDF_a(x) - ECDF_b(x) - band

    @property
    def verdict(self) -> str:
        return "DOMINATES" if self.dominates else "NOT_DOMINATES"


def dominance_check(a, b, alpha: float = 1e-3) -> DominanceResult:
    """Empirical check that ``a`` stochastically dominates ``b``.

    Dominance requires ``ECDF_a <= ECDF_b`` everywhere; the combined DKW
    band of the two samples absorbs Monte Carlo noise at level ``alpha``.
    ``worst_margin`` is the largest band-adjusted violation (negative when
    dominance holds with room to spare).
    """
    sa, sb = _as_sorted(a), _as_sorted(b)
    if sa.size < 100 or sb.size < 100:
        raise ValueError("dominance check needs at least 100 samples per side")
    band = dkw_band(sa.size, alpha) + dkw_band(sb.size, alpha)
    grid = np.concatenate([sa, sb])
    fa = np.searchsorted(sa, grid, side="right") / sa.size
    fb = np.searchsorted(sb, grid, side="right") / sb.size
    worst = float(np.max(fa - fb - band))
    return DominanceResult(dominates=worst <= 0.0, worst_margin=worst)


def mean_ci(d, z: float = 1.0) -> tuple[float, float]:
    """Sample mean and ``z``-standard-error half-width."""
    s = _as_sorted(d)
    if s.size < 2:
        raise ValueError("mean_ci needs at least 2 samples")
    return float(s.mean()), float(z * s.std(ddof=1) / math.sqrt(s.size))


def normal_cdf(x, mean: float = 0.0, std: float = 1.0):
    """Gaussian CDF via erf; vectorized."""
    z = (np.asarray(x, dtype=np.float64) - mean) / (std * math.sqrt(2.0))
    out = 0.5 * (1.0 + np.vectorize(math.erf)(z))
    return float(out) if np.isscalar(x) else out
