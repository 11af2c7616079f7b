"""Best-of-L selection: order statistics of the strongest user SNR.

With L i.i.d. users the selected SNR is the maximum, with density
L·f(x)·F(x)^{L-1} and CDF F(x)^L.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ConvergenceError
from .fading import SnrDistribution


@dataclass(frozen=True)
class MudDistribution:
    """Distribution of the maximum SNR among num_users i.i.d. links."""

    base: SnrDistribution
    num_users: int

    def __post_init__(self):
        if self.num_users < 1:
            raise ValueError(f"num_users must be >= 1, got {self.num_users}")

    def pdf(self, x):
        return mud_pdf(self, x)

    def cdf(self, x):
        return mud_cdf(self, x)

    def sample(self, rng: np.random.Generator, n: int) -> np.ndarray:
        return mud_sample(self, rng, n)

    def upper_tail_point(self, tail_prob: float = 1e-3) -> float:
        """Smallest power-of-two multiple of the mean scale whose upper tail
        mass is below tail_prob; anchors semi-infinite quadrature so the
        bulk of this distribution is never skipped over."""
        x = max(self.base.spec.mean_snr, 1.0)
        while 1.0 - float(self.cdf(x)) > tail_prob:
            x *= 2.0
            if x > 1e300:
                raise ConvergenceError(
                    f"upper tail of {self!r} never falls below {tail_prob}")
        return x


def mud_pdf(d: MudDistribution, x):
    """L·f(x)·F(x)^{L-1}; collapses exactly to the base pdf for L=1."""
    if d.num_users == 1:
        return d.base.pdf(x)
    f = d.base.pdf(x)
    F = d.base.cdf(x)
    return d.num_users * f * F ** (d.num_users - 1)


def mud_cdf(d: MudDistribution, x):
    """F(x)^L; collapses exactly to the base CDF for L=1."""
    if d.num_users == 1:
        return d.base.cdf(x)
    return d.base.cdf(x) ** d.num_users


def mud_sample(d: MudDistribution, rng: np.random.Generator, n: int) -> np.ndarray:
    """n draws of the best-of-L SNR: columnwise maximum of L base draws."""
    if d.num_users == 1:
        return d.base.sample(rng, n)
    draws = d.base.sample(rng, (d.num_users, n))
    return draws.max(axis=0)
