"""Monte Carlo estimators, independent of the analytic pipeline.

Per draw: sample the best-of-L SNR, apply the solved policy, average. No
quadrature or root finding is shared with the analytic side, so agreement
is a genuine cross-check. Streams come from PCG64 seeded through
SeedSequence; batch totals are combined with exact summation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .mud import MudDistribution
from .power import ConstellationSet, CutoffSolution, DrPolicy


@dataclass(frozen=True)
class McConfig:
    samples: int
    seed: int = 0
    batch: int = 200_000

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.batch < 1:
            raise ValueError(f"batch must be >= 1, got {self.batch}")


@dataclass(frozen=True)
class McEstimate:
    value: float
    stderr: float
    samples: int

    def within(self, reference: float, n_sigma: float = 3.0) -> bool:
        return abs(self.value - reference) <= n_sigma * self.stderr


def _accumulate(dist: MudDistribution, cfg: McConfig, per_draw) -> McEstimate:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(cfg.seed)))
    sums, sqsums = [], []
    remaining = cfg.samples
    while remaining > 0:
        n = min(cfg.batch, remaining)
        x = dist.sample(rng, n)
        v = per_draw(x)
        sums.append(float(np.sum(v)))
        sqsums.append(float(np.sum(v * v)))
        remaining -= n
    n = cfg.samples
    mean = math.fsum(sums) / n
    if n > 1:
        var = max(0.0, (math.fsum(sqsums) - n * mean * mean) / (n - 1))
        stderr = math.sqrt(var / n)
    else:
        stderr = float("inf")
    return McEstimate(value=mean, stderr=stderr, samples=n)


def mc_capacity(dist: MudDistribution, cut: CutoffSolution, cfg: McConfig,
                k: float = 1.0) -> McEstimate:
    """Mean of log₂(x·k/γ₀) over draws above the transmission threshold
    γ₀/k; k=1 estimates capacity, k<1 the continuous-rate efficiency."""
    g0 = cut.gamma0
    thr = g0 / k

    def per_draw(x):
        return np.where(x > thr, np.log2(np.maximum(x, thr) * k / g0), 0.0)

    return _accumulate(dist, cfg, per_draw)


def _region_index(pol: DrPolicy, x: np.ndarray) -> np.ndarray:
    # 0 = outage, j >= 1 = j-th active constellation
    return np.searchsorted(np.asarray(pol.boundaries), x, side="right")


def mc_se_dr(dist: MudDistribution, pol: DrPolicy, cset: ConstellationSet,
             cfg: McConfig) -> McEstimate:
    """Mean of log₂(M_j) with j the region of each draw."""
    bits = np.array([0.0] + [math.log2(m) for m in cset.sizes[1:]])

    def per_draw(x):
        return bits[_region_index(pol, x)]

    return _accumulate(dist, cfg, per_draw)


def mc_power_check(dist: MudDistribution, policy, cfg: McConfig,
                   k: float = 1.0,
                   cset: Optional[ConstellationSet] = None) -> McEstimate:
    """Average per-draw normalized power of a solved policy; must land on
    the budget ratio. Pass k for the continuous-rate cutoff, cset for a
    discrete-rate policy."""
    if isinstance(policy, CutoffSolution):
        g0 = policy.gamma0
        thr = g0 / k

        def per_draw(x):
            return np.where(x > thr, 1.0 / g0 - 1.0 / (np.maximum(x, thr) * k), 0.0)

        return _accumulate(dist, cfg, per_draw)

    if isinstance(policy, DrPolicy):
        if cset is None:
            raise ValueError("discrete-rate power check needs the constellation set")
        kk = cset.k
        coeff = np.array([0.0] + [(m - 1.0) / policy.gamma_star
                                  for m in cset.sizes[1:]])

        def per_draw(x):
            idx = _region_index(policy, x)
            return np.where(idx > 0, coeff[idx] - 1.0 / (x * kk), 0.0)

        return _accumulate(dist, cfg, per_draw)

    raise TypeError(f"unsupported policy type {type(policy).__name__}")
