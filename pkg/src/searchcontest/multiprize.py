"""Rank-ordered prize structures: several prizes split by finding order.

With n agents and a nonincreasing prize vector (v_1, ..., v_n), every
finder draws a uniform rank among the finders and rank m pays v_m. The
per-searcher value of searching is sum_m v_m * rank_win_probability(m),
and the equilibrium cutoff is a fixed point of that aggregate map.

Key facts used here (all checked against independent oracles in tests):

- the number of finders is Binomial(n, q F) (searcher thinning), so
  "at least m find" is a binomial tail;
- a searcher's rival finder count T is Binomial(n-1, q F) and their rank
  is uniform on {1, ..., T+1}, giving the single-sum forms below;
- rank_win_probability(m) = prob_at_least_m_find(m) / (n F).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import binom

from ._errors import ConvergenceError, InputError
from ._numerics import DEFAULT_TOL, bisect_root, bisect_root_decreasing, win_rate
from .distributions import CostDistribution
from .equilibrium import (
    ContestConfig,
    EquilibriumResult,
    solve_threshold,
    success_probability,
    win_probability,
)
from .principal import objective, optimal_prize, stakes_for_threshold


@dataclass(frozen=True)
class PrizeStructure:
    """Nonincreasing, nonnegative prize vector; total is the purse V."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) < 1:
            raise InputError("prize structure needs at least one prize")
        if any(v < 0.0 or not math.isfinite(v) for v in vals):
            raise InputError("prizes must be nonnegative and finite")
        if any(vals[i] < vals[i + 1] for i in range(len(vals) - 1)):
            raise InputError("prizes must be nonincreasing in rank")
        if sum(vals) <= 0.0:
            raise InputError("total prize money must be positive")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def total(self) -> float:
        return float(sum(self.values))

    @staticmethod
    def winner_takes_all(V: float, n: int) -> "PrizeStructure":
        return PrizeStructure((float(V),) + (0.0,) * (int(n) - 1))

    @staticmethod
    def equal_split(V: float, n: int) -> "PrizeStructure":
        return PrizeStructure((float(V) / int(n),) * int(n))

    @staticmethod
    def mixed(V: float, n: int, weight: float) -> "PrizeStructure":
        """Convex mix: weight on winner-takes-all, rest on the equal split."""
        if not (0.0 <= weight <= 1.0):
            raise InputError(f"mix weight must lie in [0, 1], got {weight}")
        base = (1.0 - weight) * float(V) / int(n)
        vals = [base + weight * float(V)] + [base] * (int(n) - 1)
        return PrizeStructure(tuple(vals))


def _check_rank_args(d: CostDistribution, q: float, n: int, m: int, c_hat: float) -> float:
    if not (0.0 < q <= 1.0):
        raise InputError(f"q must lie in (0, 1], got {q}")
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise InputError(f"n must be an integer >= 1, got {n!r}")
    if not (isinstance(m, (int, np.integer)) and 1 <= m <= n):
        raise InputError(f"rank m must be an integer in [1, {n}], got {m!r}")
    lo, hi = d.support()
    if not (lo <= c_hat <= hi):
        raise InputError(f"c_hat = {c_hat} outside support [{lo}, {hi}]")
    return d.cdf(c_hat)


def prob_at_least_m_find(
    d: CostDistribution, q: float, n: int, m: int, c_hat: float
) -> float:
    """Probability that at least m agents find the object at cutoff c_hat.

    The finder count is Binomial(n, q F(c_hat)) by thinning, so this is
    its upper tail at m.
    """
    F = _check_rank_args(d, q, n, m, c_hat)
    return float(binom.sf(m - 1, n, q * F))


def prob_at_least_m_find_direct(
    d: CostDistribution, q: float, n: int, m: int, c_hat: float
) -> float:
    """Literal double sum over searcher and finder counts (oracle form).

    O(n^2); exact integer binomials up to n = 60, log-domain beyond.
    """
    F = _check_rank_args(d, q, n, m, c_hat)
    total = 0.0
    for k in range(m, n + 1):
        inner = 0.0
        for t in range(m, k + 1):
            inner += _binom_pmf(t, k, q)
        total += _binom_pmf(k, n, F) * inner
    return total


def _binom_pmf(k: int, nn: int, p: float) -> float:
    """C(nn, k) p^k (1-p)^(nn-k) without scipy, overflow-safe."""
    if p <= 0.0:
        return 1.0 if k == 0 else 0.0
    if p >= 1.0:
        return 1.0 if k == nn else 0.0
    if nn <= 60:
        return math.comb(nn, k) * p**k * (1.0 - p) ** (nn - k)
    log_c = math.lgamma(nn + 1) - math.lgamma(k + 1) - math.lgamma(nn - k + 1)
    return math.exp(log_c + k * math.log(p) + (nn - k) * math.log1p(-p))


def rank_win_probability(
    d: CostDistribution, q: float, n: int, m: int, c_hat: float
) -> float:
    """Probability a searching agent ends up with the rank-m prize.

    Ratio form prob_at_least_m_find / (n F); at F = 0 it is q for m = 1
    (a lone searcher who finds takes the top rank) and 0 for m > 1.
    """
    F = _check_rank_args(d, q, n, m, c_hat)
    if m == 1:
        return q * win_rate(q * F, float(n))
    if F == 0.0:
        return 0.0
    return prob_at_least_m_find(d, q, n, m, c_hat) / (n * F)


def rank_win_probability_direct(
    d: CostDistribution, q: float, n: int, m: int, c_hat: float
) -> float:
    """Double sum over rival searcher and finder counts (oracle form).

    q * sum_k C(n-1,k) F^k (1-F)^{n-1-k} sum_t C(k,t) q^t (1-q)^{k-t}/(t+1)
    with k >= m-1 and t in [m-1, k].
    """
    F = _check_rank_args(d, q, n, m, c_hat)
    total = 0.0
    for k in range(m - 1, n):
        inner = 0.0
        for t in range(m - 1, k + 1):
            inner += _binom_pmf(t, k, q) / (t + 1.0)
        total += _binom_pmf(k, n - 1, F) * inner
    return q * total


def _rival_finder_pmf(q: float, n: int, F: float) -> np.ndarray:
    """pmf of a searcher's rival finder count: Binomial(n-1, q F)."""
    return binom.pmf(np.arange(n), n - 1, q * F)


def expected_prize_per_searcher(
    d: CostDistribution, q: float, n: int, structure: PrizeStructure, c_hat: float
) -> float:
    """Aggregate map sum_m v_m * rank_win_probability(m), evaluated in O(n).

    A finder with T rival finders collects the average of the top T+1
    prizes, so the sum collapses to q * E[mean of top T+1 prizes].
    """
    if structure.n != n:
        raise InputError(f"structure has {structure.n} prizes but n = {n}")
    F = _check_rank_args(d, q, n, 1, c_hat)
    v = np.asarray(structure.values)
    top_means = np.cumsum(v) / np.arange(1, n + 1)
    return q * float(np.dot(_rival_finder_pmf(q, n, F), top_means))


def expected_payout(
    d: CostDistribution, q: float, n: int, structure: PrizeStructure, c_hat: float
) -> float:
    """Designer's expected prize bill: sum_m v_m * prob_at_least_m_find(m)."""
    if structure.n != n:
        raise InputError(f"structure has {structure.n} prizes but n = {n}")
    F = _check_rank_args(d, q, n, 1, c_hat)
    tails = binom.sf(np.arange(n), n, q * F)  # P(T >= m), m = 1..n
    return float(np.dot(np.asarray(structure.values), tails))


def equilibrium_roots_multi(
    d: CostDistribution,
    q: float,
    n: int,
    structure: PrizeStructure,
    grid_size: int = 512,
    tol: float = DEFAULT_TOL,
) -> list[float]:
    """All interior fixed points of c = expected_prize_per_searcher(c).

    Scans a grid over the support for sign changes of the gap and bisects
    each bracket. One root is guaranteed under the interiority conditions;
    more can exist for irregular distributions, so all are reported.
    """
    lo, hi = d.support()

    def gap(c: float) -> float:
        return c - expected_prize_per_searcher(d, q, n, structure, c)

    grid = np.linspace(lo, hi, grid_size)
    vals = np.array([gap(float(c)) for c in grid])
    roots: list[float] = []
    for i in range(len(grid) - 1):
        a, b = float(grid[i]), float(grid[i + 1])
        fa, fb = float(vals[i]), float(vals[i + 1])
        if fa == 0.0:
            roots.append(a)
        elif fa < 0.0 < fb:
            roots.append(bisect_root(gap, a, b, tol))
        elif fa > 0.0 > fb:
            roots.append(bisect_root_decreasing(gap, a, b, tol))
    if vals[-1] == 0.0:
        roots.append(float(grid[-1]))
    # Deduplicate near-identical roots from flat stretches.
    out: list[float] = []
    for r in roots:
        if not out or abs(r - out[-1]) > 10.0 * max(tol, 1e-12):
            out.append(r)
    return out


def solve_threshold_multi(
    d: CostDistribution,
    q: float,
    n: int,
    structure: PrizeStructure,
    tol: float = DEFAULT_TOL,
) -> EquilibriumResult:
    """Equilibrium cutoff under a rank-ordered prize structure.

    Interior when v_1*q > c_lo and the aggregate map at c_hi is below
    c_hi; otherwise clamps to the violated endpoint. With several interior
    roots (possible without a regular distribution) the smallest is
    returned; use equilibrium_roots_multi to see them all.
    """
    lo, hi = d.support()

    def m_map(c: float) -> float:
        return expected_prize_per_searcher(d, q, n, structure, c)

    if m_map(lo) <= lo:
        c, interior = lo, False
    elif m_map(hi) >= hi:
        c, interior = hi, False
    else:
        roots = equilibrium_roots_multi(d, q, n, structure, tol=tol)
        if not roots:
            raise ConvergenceError("no equilibrium root found despite interior endpoints")
        c, interior = roots[0], True
    cfg = ContestConfig(n=float(n), q=q, V=structure.total)
    return EquilibriumResult(
        threshold=c,
        success_prob=success_probability(d, cfg, c),
        expected_searchers=n * d.cdf(c),
        # Expected prize share per searcher relative to the purse.
        win_prob=m_map(c) / structure.total,
        interior=interior,
        residual=abs(c - m_map(c)),
    )


def achievable_interval(
    d: CostDistribution, q: float, n: int, V: float, tol: float = DEFAULT_TOL
) -> tuple[float, float]:
    """Cutoffs reachable by some prize structure with purse V.

    The equal split gives the lowest cutoff (V q / n when interior) and
    winner-takes-all the highest (the baseline c*(V)).
    """
    lo_res = solve_threshold_multi(d, q, n, PrizeStructure.equal_split(V, n), tol)
    hi_res = solve_threshold(d, ContestConfig(n=float(n), q=q, V=V), tol)
    return (lo_res.threshold, hi_res.threshold)


def principal_value_multi(
    d: CostDistribution,
    q: float,
    n: int,
    W: float,
    structure: PrizeStructure,
    tol: float = DEFAULT_TOL,
) -> float:
    """Designer's expected payoff W*P - payouts at the induced equilibrium."""
    if not (W > 0.0 and math.isfinite(W)):
        raise InputError(f"W must be positive and finite, got {W}")
    res = solve_threshold_multi(d, q, n, structure, tol)
    return W * res.success_prob - expected_payout(d, q, n, structure, res.threshold)


@dataclass(frozen=True)
class StructureSolution:
    threshold: float
    structure: PrizeStructure
    mix_weight: float  # weight on winner-takes-all in the optimal mix
    regime: str  # "equal-split" | "interior-mix" | "winner-takes-all"
    value: float
    stakes_window: tuple[float, float]
    certified: bool


def optimal_prize_structure(
    d: CostDistribution,
    q: float,
    n: int,
    W: float,
    V: float,
    tol: float = DEFAULT_TOL,
) -> StructureSolution:
    """Best prize structure with purse V for a designer with stakes W.

    The designer's payoff depends on the structure only through the
    induced cutoff, so the problem reduces to: clamp the unconstrained
    optimal cutoff into the achievable interval, then realize the clamped
    cutoff with a winner-takes-all / equal-split mix. The mix weight
    solves lam*V*Phi1(c) + (1-lam)*V*q/n = c at the target cutoff.
    """
    if not (V > 0.0 and math.isfinite(V)):
        raise InputError(f"V must be positive and finite, got {V}")
    a, b = achievable_interval(d, q, n, V, tol)
    base = optimal_prize(d, q, n, W, tol)
    certified = base.certified
    if certified:
        target = min(max(base.threshold, a), b)
    else:
        # Grid maximization restricted to the achievable interval.
        grid = np.linspace(a, b, 4097)
        vals = np.array([objective(d, q, n, W, float(c)) for c in grid])
        target = float(grid[int(np.argmax(vals))])

    cfg = ContestConfig(n=float(n), q=q, V=V)
    edge_tol = max(1e-12, 1e-9 * max(b - a, 1.0))
    if target <= a + edge_tol:
        weight, regime = 0.0, "equal-split"
    elif target >= b - edge_tol:
        weight, regime = 1.0, "winner-takes-all"
    else:
        denom = V * win_probability(d, cfg, target) - V * q / n
        numer = target - V * q / n
        if denom <= 0.0 or not (0.0 <= numer <= denom):
            raise ConvergenceError(
                f"mix weight for cutoff {target} fell outside [0, 1]"
            )
        weight, regime = numer / denom, "interior-mix"
    structure = PrizeStructure.mixed(V, n, weight)
    value = principal_value_multi(d, q, n, W, structure, tol)
    window = (
        stakes_for_threshold(d, q, float(n), a),
        stakes_for_threshold(d, q, float(n), b),
    )
    return StructureSolution(
        threshold=target,
        structure=structure,
        mix_weight=weight,
        regime=regime,
        value=value,
        stakes_window=window,
        certified=certified,
    )
