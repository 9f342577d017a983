"""Symmetric equilibrium of the baseline search contest.

n agents with private costs drawn from a common distribution decide whether
to search for an object; a searcher finds it with probability q, and the
prize V goes to one uniformly chosen finder. The unique symmetric
equilibrium is a threshold rule: search iff cost <= c*, where c* is the
fixed point of c = V * win_probability(c).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._errors import InputError
from ._numerics import (
    DEFAULT_TOL,
    bisect_root,
    prob_any,
    win_rate,
)
from .distributions import CostDistribution


@dataclass(frozen=True)
class ContestConfig:
    """Contest primitives: field size n (real, >= 1), find probability q,
    prize value V."""

    n: float
    q: float
    V: float

    def __post_init__(self):
        if not (self.n >= 1.0 and math.isfinite(self.n)):
            raise InputError(f"n must be a finite real >= 1, got {self.n}")
        if not (0.0 < self.q <= 1.0):
            raise InputError(f"q must lie in (0, 1], got {self.q}")
        if not (self.V > 0.0 and math.isfinite(self.V)):
            raise InputError(f"V must be positive and finite, got {self.V}")


@dataclass(frozen=True)
class EquilibriumResult:
    threshold: float
    success_prob: float
    expected_searchers: float
    win_prob: float
    interior: bool
    residual: float


@dataclass(frozen=True)
class InteriorityCheck:
    """Margins of the two conditions for an interior equilibrium cutoff.

    lower_margin = qV - c_lo (the cheapest agent strictly gains from
    searching alone); upper_margin = c_hi - V * win_probability(c_hi) (the
    costliest agent strictly loses when everyone searches). Both must be
    positive for an interior fixed point.
    """

    lower_ok: bool
    upper_ok: bool
    lower_margin: float
    upper_margin: float

    @property
    def ok(self) -> bool:
        return self.lower_ok and self.upper_ok


def win_probability(d: CostDistribution, cfg: ContestConfig, c_hat: float) -> float:
    """Probability a searching agent wins when everyone uses cutoff c_hat.

    Closed form (1 - (1 - q F)^n) / (n F), extended continuously to q at
    F = 0. Strictly decreasing in c_hat on the support.
    """
    lo, hi = d.support()
    if not (lo <= c_hat <= hi):
        raise InputError(f"c_hat = {c_hat} outside support [{lo}, {hi}]")
    x = cfg.q * d.cdf(c_hat)
    # (1-(1-x)^n)/(nF) = q * (1-(1-x)^n)/(n x); win_rate handles x -> 0.
    return cfg.q * win_rate(x, cfg.n)


def success_probability(d: CostDistribution, cfg: ContestConfig, c_hat: float) -> float:
    """Probability the object is found: 1 - (1 - q F(c_hat))^n."""
    lo, hi = d.support()
    if not (lo <= c_hat <= hi):
        raise InputError(f"c_hat = {c_hat} outside support [{lo}, {hi}]")
    return prob_any(cfg.q * d.cdf(c_hat), cfg.n)


def solve_threshold(
    d: CostDistribution, cfg: ContestConfig, tol: float = DEFAULT_TOL
) -> EquilibriumResult:
    """Equilibrium cutoff: root of g(c) = c - V * win_probability(c).

    g is strictly increasing, so bisection is globally safe. When the
    interiority conditions fail the cutoff clamps to the relevant support
    endpoint and the result is flagged non-interior.
    """
    lo, hi = d.support()
    if cfg.q * cfg.V <= lo:
        # Even a lone finder's expected prize cannot cover the cheapest cost.
        c = lo
        interior = False
    elif cfg.V * win_probability(d, cfg, hi) >= hi:
        # Search is worthwhile at the costliest draw; everyone searches.
        c = hi
        interior = False
    else:
        c = bisect_root(
            lambda t: t - cfg.V * win_probability(d, cfg, t), lo, hi, tol
        )
        interior = True
    w = win_probability(d, cfg, c)
    return EquilibriumResult(
        threshold=c,
        success_prob=success_probability(d, cfg, c),
        expected_searchers=cfg.n * d.cdf(c),
        win_prob=w,
        interior=interior,
        residual=abs(c - cfg.V * w),
    )


def check_interiority(d: CostDistribution, cfg: ContestConfig) -> InteriorityCheck:
    """Evaluate both interiority conditions with their margins."""
    lo, hi = d.support()
    lower = cfg.q * cfg.V - lo
    upper = hi - cfg.V * win_probability(d, cfg, hi)
    return InteriorityCheck(
        lower_ok=lower > 0.0,
        upper_ok=upper > 0.0,
        lower_margin=lower,
        upper_margin=upper,
    )


def sweep_n(
    d: CostDistribution,
    q: float,
    V: float,
    n_values,
    tol: float = DEFAULT_TOL,
) -> list[tuple[float, EquilibriumResult]]:
    """Solve the contest for each field size in n_values."""
    return [
        (float(n), solve_threshold(d, ContestConfig(n=float(n), q=q, V=V), tol))
        for n in n_values
    ]


def success_increasing_in_n(d: CostDistribution, q: float, c_star: float) -> bool:
    """Does equilibrium success probability rise as the field grows?

    Holds iff (1-y) ln(1-y) / (-y) >= 1 / (1 + F/(c f)) at the current
    cutoff, with y = q F(c_star). Requires F > 0 and f > 0 there.
    """
    if not (0.0 < q <= 1.0):
        raise InputError(f"q must lie in (0, 1], got {q}")
    F = d.cdf(c_star)
    if F <= 0.0:
        raise InputError("condition needs F(c_star) > 0")
    f = d.pdf(c_star)
    if f <= 0.0:
        raise InputError("condition needs positive density at c_star")
    y = q * F
    if y >= 1.0:
        lhs = 0.0
    else:
        lhs = (1.0 - y) * math.log1p(-y) / (-y)
    rhs = 1.0 / (1.0 + F / (c_star * f))
    return lhs >= rhs


def q_bound_monotone_success(d: CostDistribution, grid_size: int = 4096) -> float:
    """Largest find probability below which success always rises with n.

    Equals 1 / (max_c c*f(c) + 1). The maximum of c*f(c) is located by a
    coarse grid followed by two zoom refinements; exact for the supported
    families (the max sits at a support endpoint or a kink).
    """
    lo, hi = d.support()

    def cf(c: float) -> float:
        try:
            return c * d.pdf(c)
        except InputError:
            return 0.0

    import numpy as np

    grid = np.linspace(lo, hi, grid_size)
    vals = np.array([cf(float(c)) for c in grid])
    if not np.all(np.isfinite(vals)):
        raise InputError("c*f(c) is unbounded on the support")
    best = int(np.argmax(vals))
    a = grid[max(best - 1, 0)]
    b = grid[min(best + 1, grid_size - 1)]
    peak = float(vals[best])
    for _ in range(2):
        zoom = np.linspace(a, b, grid_size)
        zvals = np.array([cf(float(c)) for c in zoom])
        j = int(np.argmax(zvals))
        peak = max(peak, float(zvals[j]))
        a = zoom[max(j - 1, 0)]
        b = zoom[min(j + 1, grid_size - 1)]
    return 1.0 / (peak + 1.0)


def qf_cutoff_power(alpha: float) -> float:
    """Power-law cost cutoff on y = q F(c*) for success monotone in n.

    Root in (0, 1) of (1-y) ln(1-y) + y*alpha/(1+alpha) = 0; below it the
    success probability rises with the field size, above it falls.
    """
    if not (alpha > 0.0 and math.isfinite(alpha)):
        raise InputError(f"alpha must be positive, got {alpha}")
    ratio = alpha / (1.0 + alpha)

    def h(y: float) -> float:
        if y >= 1.0:
            return ratio
        return (1.0 - y) * math.log1p(-y) + y * ratio

    # h < 0 just above 0 (slope -1/(1+alpha)) and h(1) = ratio > 0.
    return bisect_root(h, 1e-12, 1.0, tol=1e-15)
