"""Adaptive Gauss–Kronrod quadrature and bracketed root finding.

The integrators expect vectorized integrands (ndarray in, ndarray out) and
return a (value, error_estimate) pair. Semi-infinite ranges are reduced to
finite panels with the reciprocal substitution x = c/u on the tail, which
copes with the power-law tails of the gain-ratio distributions without a
hand-derived truncation bound.
"""

from __future__ import annotations

import heapq
from typing import Callable, Tuple

import numpy as np

from .exceptions import ConvergenceError, NoSolutionError

# 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_NODES = np.concatenate([-_XGK[:7], _XGK[::-1]])          # 15 ascending nodes
_WK = np.concatenate([_WGK[:7], _WGK[::-1]])
_GAUSS_IDX = np.array([1, 3, 5, 7, 9, 11, 13])            # G7 subset of the 15
_WGL = np.concatenate([_WG[:3], _WG[3:], _WG[2::-1]])     # G7 weights, ascending

_EPS = np.finfo(float).eps


def _kronrod_panel(fn, a: float, b: float):
    """One G7/K15 evaluation on [a,b] -> (K15 value, error estimate)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fx = np.asarray(fn(mid + half * _NODES), dtype=float)
    k15 = half * float(np.dot(_WK, fx))
    g7 = half * float(np.dot(_WGL, fx[_GAUSS_IDX]))
    resabs = half * float(np.dot(_WK, np.abs(fx)))
    mean = k15 / (b - a)
    resasc = half * float(np.dot(_WK, np.abs(fx - mean)))
    err = abs(k15 - g7)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    err = max(err, 50.0 * _EPS * resabs)
    return k15, err


def integrate(fn: Callable[[np.ndarray], np.ndarray], a: float, b: float,
              abs_tol: float = 1e-12, rel_tol: float = 1e-10,
              max_panels: int = 4000, initial_panels: int = 1) -> Tuple[float, float]:
    """Adaptive ∫_a^b fn(x) dx; returns (value, error estimate).

    Worst-panel bisection until the summed error estimate meets
    max(abs_tol, rel_tol·|value|). Integrable endpoint singularities are
    fine (the rule is open); raises ConvergenceError at the panel budget.
    initial_panels > 1 pre-splits the range so narrow interior features
    cannot hide between the nodes of a single wide panel.
    """
    if b <= a:
        return 0.0, 0.0
    edges = np.linspace(a, b, initial_panels + 1)
    heap = []
    total_val = total_err = 0.0
    for pa, pb in zip(edges, edges[1:]):
        val, err = _kronrod_panel(fn, float(pa), float(pb))
        heap.append((-err, float(pa), float(pb), val, err))
        total_val += val
        total_err += err
    heapq.heapify(heap)
    panels = initial_panels
    while total_err > max(abs_tol, rel_tol * abs(total_val)):
        if panels >= max_panels:
            raise ConvergenceError(
                f"quadrature did not reach tolerance on [{a}, {b}]: "
                f"value={total_val}, error={total_err}, panels={panels}"
            )
        _, pa, pb, pval, perr = heapq.heappop(heap)
        pm = 0.5 * (pa + pb)
        if pm <= pa or pm >= pb:   # interval at floating-point resolution
            heapq.heappush(heap, (0.0, pa, pb, pval, 0.0))
            total_err -= perr
            continue
        lv, le = _kronrod_panel(fn, pa, pm)
        rv, re = _kronrod_panel(fn, pm, pb)
        total_val += lv + rv - pval
        total_err += le + re - perr
        heapq.heappush(heap, (-le, pa, pm, lv, le))
        heapq.heappush(heap, (-re, pm, pb, rv, re))
        panels += 1
    return total_val, total_err


def integrate_to_inf(fn: Callable[[np.ndarray], np.ndarray], a: float,
                     abs_tol: float = 1e-12, rel_tol: float = 1e-10,
                     max_panels: int = 4000, split: float = 0.0) -> Tuple[float, float]:
    """Adaptive ∫_a^∞ fn(x) dx for a ≥ 0; returns (value, error estimate).

    Integrates [a, c] directly and maps the tail with x = c/u, u ∈ (0,1],
    so ∫_c^∞ fn = ∫_0^1 fn(c/u)·c/u² du; power-law tails become integrable
    endpoint behavior at u→0 and are resolved by the same adaptive rule.

    c = max(a+1, split). Pass the integrand's mass scale as `split` when it
    may lie far above a (for sharply concentrated densities the reciprocal
    map would otherwise compress the mass into a sliver of u-space that the
    first panel's nodes straddle without sampling).
    """
    c = max(a + 1.0, split)

    def tail(u):
        u = np.asarray(u, dtype=float)
        x = c / u
        return fn(x) * c / (u * u)

    head_val, head_err = integrate(fn, a, c, abs_tol=0.5 * abs_tol,
                                   rel_tol=0.5 * rel_tol, max_panels=max_panels,
                                   initial_panels=8)
    tail_val, tail_err = integrate(tail, 0.0, 1.0, abs_tol=0.5 * abs_tol,
                                   rel_tol=0.5 * rel_tol, max_panels=max_panels,
                                   initial_panels=4)
    return head_val + tail_val, head_err + tail_err


def solve_decreasing(g: Callable[[float], float], target: float,
                     bracket: Tuple[float, float] = (1e-4, 10.0),
                     expand: float = 4.0,
                     residual_tol: float = 1e-10,
                     max_iter: int = 200) -> Tuple[float, float, int]:
    """Solve g(x) = target for strictly decreasing g on x > 0.

    Expands the initial bracket by `expand` until it straddles the target,
    then alternates secant steps with bisection fallback. Returns
    (x, residual, iterations) with residual = g(x) − target.
    Raises NoSolutionError when g stays below target as x → 0⁺.
    """
    lo, hi = bracket
    g_lo = g(lo)
    evals = 2
    while g_lo < target:
        lo /= expand
        if lo < 1e-14:
            raise NoSolutionError(
                f"constraint stays below target {target} as the cutoff "
                f"vanishes; limiting value {g_lo} at {lo * expand}"
            )
        g_lo = g(lo)
        evals += 1
    g_hi = g(hi)
    while g_hi > target:
        hi *= expand
        if hi > 1e14:
            raise NoSolutionError(
                f"constraint stays above target {target} as the cutoff "
                f"grows; value {g_hi} at {hi / expand}"
            )
        g_hi = g(hi)
        evals += 1

    # lo/hi now straddle: g(lo) >= target >= g(hi)
    x_prev, f_prev = lo, g_lo - target
    x_cur, f_cur = hi, g_hi - target
    for it in range(max_iter):
        if abs(f_cur) <= residual_tol:
            return x_cur, f_cur, evals + it
        if f_prev != f_cur:
            x_new = x_cur - f_cur * (x_cur - x_prev) / (f_cur - f_prev)
        else:
            x_new = 0.5 * (lo + hi)
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if x_new <= lo or x_new >= hi or hi - lo <= _EPS * hi:
            # bracket exhausted at floating-point resolution
            return x_cur, f_cur, evals + it
        f_new = g(x_new) - target
        if f_new > 0.0:
            lo = x_new
        else:
            hi = x_new
        x_prev, f_prev = x_cur, f_cur
        x_cur, f_cur = x_new, f_new
    raise ConvergenceError(
        f"root refinement did not reach |residual| <= {residual_tol} in "
        f"{max_iter} iterations; last x={x_cur}, residual={f_cur}"
    )
