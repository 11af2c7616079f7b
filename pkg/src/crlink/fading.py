"""Single-user SNR distributions for the two cognitive-radio link types.

Direct link: received SNR of the secondary link. Rayleigh fading gives an
exponential SNR law; Nakagami-m fading gives a Gamma law with shape m and
mean equal to the configured mean SNR.

Ratio link (spectrum sharing): the effective SNR is a scale factor times the
ratio of the secondary and interference channel gains. With both gains
Gamma(m) the unit-scale ratio follows a Beta-prime(m,m) law,

    f(x) = x^{m-1} / (B(m,m) (1+x)^{2m}),
    F(x) = (1/B(m,m)) (x^m/m) 2F1(m, 2m; 1+m; -x),

and the configured mean_snr acts as the scale s: pdf_s(x) = pdf(x/s)/s.
All evaluators accept scalars or numpy arrays.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .specfun import (Accuracy, DEFAULT_ACCURACY, _hyp2f1_series, ln_beta,
                      reg_lower_gamma)


class FadingFamily(enum.Enum):
    RAYLEIGH = "rayleigh"
    NAKAGAMI = "nakagami"


class LinkKind(enum.Enum):
    DIRECT = "direct"      # secondary-link SNR (transmit-power constraint)
    RATIO = "ratio"        # gain-ratio SNR (interference-power constraint)


@dataclass(frozen=True)
class FadingSpec:
    """Fading family, Nakagami shape factor m, and linear-scale mean SNR.

    For the ratio link, mean_snr is the scale s applied to the unit gain
    ratio (the constants of the interference geometry folded into one
    number); the ratio variable itself has no finite mean for m <= 1.
    """

    family: FadingFamily
    mean_snr: float
    m: float = 1.0

    def __post_init__(self):
        if self.mean_snr <= 0.0:
            raise ValueError(f"mean_snr must be > 0, got {self.mean_snr}")
        if self.family is FadingFamily.NAKAGAMI and self.m < 0.5:
            raise ValueError(f"Nakagami shape factor must be >= 0.5, got {self.m}")
        if self.family is FadingFamily.RAYLEIGH and self.m != 1.0:
            raise ValueError("Rayleigh admits no shape factor other than 1")

    @property
    def shape(self) -> float:
        """Effective Gamma shape: 1 for Rayleigh, m for Nakagami."""
        return 1.0 if self.family is FadingFamily.RAYLEIGH else self.m


def rayleigh(mean_snr: float) -> FadingSpec:
    return FadingSpec(FadingFamily.RAYLEIGH, mean_snr)


def nakagami(m: float, mean_snr: float) -> FadingSpec:
    return FadingSpec(FadingFamily.NAKAGAMI, mean_snr, m)


def _prepare(x):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("SNR arguments must be >= 0")
    return arr, np.isscalar(x) or arr.ndim == 0


def _finish(arr, scalar):
    return float(arr) if scalar else arr


def pdf_direct(spec: FadingSpec, x):
    """Direct-link SNR density: Gamma(shape m, mean γ̄); exponential for m=1."""
    arr, scalar = _prepare(x)
    m, g = spec.shape, spec.mean_snr
    if m == 1.0:
        return _finish(np.exp(-arr / g) / g, scalar)
    out = np.zeros_like(arr)
    pos = arr > 0.0
    xp = arr[pos]
    out[pos] = np.exp(m * math.log(m / g) + (m - 1.0) * np.log(xp)
                      - m * xp / g - math.lgamma(m))
    # density at the origin: +inf below shape 1, 0 above
    out[~pos] = np.inf if m < 1.0 else 0.0
    return _finish(out, scalar)


def cdf_direct(spec: FadingSpec, x, acc: Accuracy = DEFAULT_ACCURACY):
    """Direct-link SNR CDF: P(m, m·x/γ̄); 1 − e^{−x/γ̄} for m=1."""
    arr, scalar = _prepare(x)
    m, g = spec.shape, spec.mean_snr
    if m == 1.0:
        return _finish(-np.expm1(-arr / g), scalar)
    y = m * arr / g
    if m == round(m) and m <= 60:
        # integer shape: 1 - e^{-y} Σ_{k<m} y^k/k!, vectorized
        n = int(m)
        out = np.ones_like(y)
        small = y <= 700.0          # e^{-y} underflows beyond; CDF is 1 there
        ys = y[small]
        term = np.ones_like(ys)
        total = np.ones_like(ys)
        for k in range(1, n):
            term = term * ys / k
            total = total + term
        out[small] = -np.expm1(-ys + np.log(total))
        return _finish(out, scalar)
    out = np.array([reg_lower_gamma(m, float(v), acc) for v in np.ravel(y)])
    return _finish(out.reshape(y.shape), scalar)


def pdf_ratio(spec: FadingSpec, x):
    """Gain-ratio SNR density: scaled Beta-prime(m,m).

    Unit scale: f(y) = y^{m-1} / (B(m,m) (1+y)^{2m}); the configured scale s
    enters as f_s(x) = f(x/s)/s.
    """
    arr, scalar = _prepare(x)
    m, s = spec.shape, spec.mean_snr
    y = arr / s
    lnB = ln_beta(m, m)
    out = np.zeros_like(y)
    pos = y > 0.0
    yp = y[pos]
    out[pos] = np.exp((m - 1.0) * np.log(yp) - 2.0 * m * np.log1p(yp) - lnB) / s
    if m < 1.0:
        out[~pos] = np.inf
    elif m == 1.0:
        out[~pos] = 1.0 / s
    return _finish(out, scalar)


def cdf_ratio(spec: FadingSpec, x, acc: Accuracy = DEFAULT_ACCURACY):
    """Gain-ratio SNR CDF via the hypergeometric closed form.

    Unit scale, y <= 1:  F(y) = w^m · 2F1(m, 1−m; 1+m; w) / (m·B(m,m)) with
    w = y/(1+y) (the Pfaff-transformed series; w <= 1/2 so it converges
    fast and terminates for integer m). For y > 1 the exact reflection
    F(y) = 1 − F(1/y) (exchangeability of the two gains) is used, which
    keeps the series argument <= 1/2 for every y.
    """
    arr, scalar = _prepare(x)
    m, s = spec.shape, spec.mean_snr
    y = arr / s
    out = np.empty_like(y)

    def unit_cdf(v):
        w = v / (1.0 + v)
        series = _hyp2f1_series(m, 1.0 - m, 1.0 + m, w, acc)
        return np.exp(m * np.log(w) - math.log(m) - ln_beta(m, m)) * series

    lower = y <= 1.0
    yl = y[lower]
    zero = yl == 0.0
    vals = np.zeros_like(yl)
    if np.any(~zero):
        vals[~zero] = unit_cdf(yl[~zero])
    out[lower] = vals
    if np.any(~lower):
        out[~lower] = 1.0 - unit_cdf(1.0 / y[~lower])
    return _finish(np.clip(out, 0.0, 1.0), scalar)


@dataclass(frozen=True)
class SnrDistribution:
    """PDF/CDF pair for one link's effective SNR, support [0, ∞)."""

    spec: FadingSpec
    link: LinkKind

    def pdf(self, x):
        if self.link is LinkKind.DIRECT:
            return pdf_direct(self.spec, x)
        return pdf_ratio(self.spec, x)

    def cdf(self, x):
        if self.link is LinkKind.DIRECT:
            return cdf_direct(self.spec, x)
        return cdf_ratio(self.spec, x)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        """Draw effective-SNR samples.

        Direct: Gamma(shape m, mean γ̄). Ratio: s · g_s/g_p with independent
        Gamma(m) gains; zero denominators (floating-point underflow) are
        redrawn.
        """
        m = self.spec.shape
        if self.link is LinkKind.DIRECT:
            return rng.gamma(m, self.spec.mean_snr / m, size=size)
        num = rng.gamma(m, 1.0, size=size)
        den = rng.gamma(m, 1.0, size=size)
        while True:
            bad = den == 0.0
            if not np.any(bad):
                break
            den[bad] = rng.gamma(m, 1.0, size=int(np.count_nonzero(bad)))
        return self.spec.mean_snr * num / den
