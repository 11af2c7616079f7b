"""Water-filling cutoffs and discrete-rate region optimization.

Every solver enforces its average-power constraint with equality:

* transmit-power mode, the budget ratio is 1;
* interference-power mode, the budget ratio is the interference budget over
  the transmit power, in linear scale (this normalization makes the
  interference sweep reduce to the transmit-power case at ratio 1).

The discrete-rate policy uses one region parameter g*: region j covers
[M_j·g*, M_{j+1}·g*) and spends (M_j − 1)/g* − 1/(x·K) per unit average
power, the same g* appearing in the rate mapping and the power law.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from .mud import MudDistribution
from .numerics import integrate, integrate_to_inf, solve_decreasing


class ConstraintMode(enum.Enum):
    TRANSMIT_POWER = "transmit"        # opportunistic access
    INTERFERENCE_POWER = "interference"  # spectrum sharing


@dataclass(frozen=True)
class ConstraintSpec:
    mode: ConstraintMode
    budget_ratio: float = 1.0

    def __post_init__(self):
        if self.budget_ratio <= 0.0:
            raise ValueError(f"budget_ratio must be > 0, got {self.budget_ratio}")


@dataclass(frozen=True)
class CutoffSolution:
    """Solved water-filling cutoff with the constraint residual achieved."""

    gamma0: float
    residual: float
    iterations: int


def power_loss_factor(target_ber: float) -> float:
    """Effective SNR penalty K = −1.5/ln(5·BER) that pins M-QAM at the
    target bit error rate; lies in (0,1) for targets below 4e-2."""
    if not 0.0 < target_ber < 0.04:
        raise ValueError(f"target_ber must be in (0, 0.04), got {target_ber}")
    return -1.5 / math.log(5.0 * target_ber)


@dataclass(frozen=True)
class ConstellationSet:
    """Discrete M-QAM sizes, leading 0 meaning no transmission."""

    sizes: Tuple[int, ...]
    target_ber: float

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        object.__setattr__(self, "sizes", sizes)
        if len(sizes) < 2 or sizes[0] != 0:
            raise ValueError("sizes must start with 0 and offer at least one constellation")
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError(f"sizes must be strictly increasing, got {sizes}")
        if sizes[1] < 2:
            raise ValueError("smallest active constellation must have >= 2 points")
        self.k  # validates target_ber

    @property
    def k(self) -> float:
        return power_loss_factor(self.target_ber)


@dataclass(frozen=True)
class DrPolicy:
    """Optimized discrete-rate policy: region parameter, edges M_j·g*,
    per-region selection probabilities (outage is the complement)."""

    gamma_star: float
    boundaries: Tuple[float, ...]
    region_probs: Tuple[float, ...]
    residual: float
    iterations: int


_QUAD_ABS = 1e-12
_QUAD_REL = 1e-11


def _waterfill_spent(dist: MudDistribution, gamma0: float, k: float,
                     split: float = 0.0) -> float:
    """Average power ∫_{γ₀/k}^∞ (1/γ₀ − 1/(x·k)) f_max(x) dx."""

    def integrand(x):
        return (1.0 / gamma0 - 1.0 / (x * k)) * dist.pdf(x)

    val, _ = integrate_to_inf(integrand, gamma0 / k,
                              abs_tol=_QUAD_ABS, rel_tol=_QUAD_REL, split=split)
    return val


def _solve_waterfill(dist: MudDistribution, c: ConstraintSpec,
                     k: float) -> CutoffSolution:
    target = c.budget_ratio
    res_tol = 1e-10 * max(1.0, target)
    split = dist.upper_tail_point()
    g0, residual, iters = solve_decreasing(
        lambda g: _waterfill_spent(dist, g, k, split), target,
        residual_tol=res_tol)
    return CutoffSolution(gamma0=g0, residual=residual, iterations=iters)


def solve_cutoff(dist: MudDistribution, c: ConstraintSpec) -> CutoffSolution:
    """Cutoff γ₀ for the capacity-optimal policy (1/γ₀ − 1/x above γ₀)."""
    return _solve_waterfill(dist, c, 1.0)


def solve_cutoff_cr(dist: MudDistribution, c: ConstraintSpec,
                    k: float) -> CutoffSolution:
    """Cutoff γ₀ for continuous-rate adaptive modulation with penalty K:
    transmission above γ₀/K, power 1/γ₀ − 1/(x·K). K=1 reduces exactly to
    solve_cutoff."""
    if not 0.0 < k <= 1.0:
        raise ValueError(f"power-loss factor must be in (0, 1], got {k}")
    return _solve_waterfill(dist, c, k)


def _dr_spent(dist: MudDistribution, gamma_star: float,
              sizes: Sequence[int], k: float, split: float = 0.0) -> float:
    """Average power of the discrete-rate policy at a given region parameter."""
    total = 0.0
    active = sizes[1:]
    for j, mj in enumerate(active):
        lo = mj * gamma_star
        coeff = (mj - 1.0) / gamma_star

        def integrand(x, _c=coeff):
            return (_c - 1.0 / (x * k)) * dist.pdf(x)

        if j + 1 < len(active):
            hi = active[j + 1] * gamma_star
            val, _ = integrate(integrand, lo, hi,
                               abs_tol=_QUAD_ABS, rel_tol=_QUAD_REL)
        else:
            val, _ = integrate_to_inf(integrand, lo,
                                      abs_tol=_QUAD_ABS, rel_tol=_QUAD_REL,
                                      split=split)
        total += val
    return total


def solve_dr_policy(dist: MudDistribution, c: ConstraintSpec,
                    cset: ConstellationSet) -> DrPolicy:
    """Find the region parameter g* spending exactly the power budget, then
    tabulate region edges and selection probabilities."""
    k = cset.k
    target = c.budget_ratio
    res_tol = 1e-10 * max(1.0, target)
    split = dist.upper_tail_point()
    gs, residual, iters = solve_decreasing(
        lambda g: _dr_spent(dist, g, cset.sizes, k, split), target,
        bracket=(1e-6, 10.0), residual_tol=res_tol)

    boundaries = tuple(mj * gs for mj in cset.sizes[1:])
    cdf_vals = [float(dist.cdf(b)) for b in boundaries]
    probs = [cdf_vals[j + 1] - cdf_vals[j] for j in range(len(cdf_vals) - 1)]
    probs.append(1.0 - cdf_vals[-1])
    return DrPolicy(gamma_star=gs, boundaries=boundaries,
                    region_probs=tuple(probs), residual=residual,
                    iterations=iters)
