"""Simulation cross-checks for the closed-form contest quantities.

Replications are drawn in fixed-size chunks, each chunk from its own
counter-based substream (Philox keyed by the master seed and the chunk
index), so results are bit-identical for a given (seed, replications,
config) regardless of how chunks might be scheduled. Estimates come with
standard errors; the pooled per-searcher rates use the delta-method SE for
a ratio of replication-level totals.

Each agent consumes a single uniform u per replication: search happens iff
u < F(threshold), the object is found iff u < q F(threshold) (the correct
nested joint for search-then-find), and conditional on finding u / (q F)
is again uniform and independent across finders, so its argmax implements
the uniform tie-break among finders exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ._errors import InputError
from .distributions import CostDistribution
from .equilibrium import ContestConfig
from .multiprize import PrizeStructure

CHUNK_SIZE = 1 << 14


@dataclass(frozen=True)
class Baseline:
    pass


@dataclass(frozen=True)
class WithExpert:
    q_e: float
    mode: str = "shared"  # "shared" | "expert_keeps"

    def __post_init__(self):
        if not (0.0 <= self.q_e <= 1.0):
            raise InputError(f"q_e must lie in [0, 1], got {self.q_e}")
        if self.mode not in ("shared", "expert_keeps"):
            raise InputError(f"unknown expert mode {self.mode!r}")


@dataclass(frozen=True)
class RankPrizes:
    structure: PrizeStructure


@dataclass(frozen=True)
class PerAgentFind:
    q_values: tuple[float, ...]

    def __post_init__(self):
        if any(not (0.0 < v <= 1.0) for v in self.q_values):
            raise InputError("every find probability must lie in (0, 1]")


Variant = Union[Baseline, WithExpert, RankPrizes, PerAgentFind]


@dataclass(frozen=True)
class SimConfig:
    replications: int
    seed: int
    thresholds: Union[float, tuple[float, ...]]
    variant: Variant = Baseline()

    def __post_init__(self):
        if not (isinstance(self.replications, (int, np.integer)) and self.replications >= 1):
            raise InputError(f"replications must be a positive integer, got {self.replications!r}")
        if not isinstance(self.seed, (int, np.integer)):
            raise InputError(f"seed must be an integer, got {self.seed!r}")


@dataclass(frozen=True)
class SimEstimate:
    success_rate: float
    success_se: float
    searcher_win_rate: float
    searcher_win_se: float
    win_rate_per_agent: np.ndarray
    win_rate_per_agent_se: np.ndarray
    mean_payoff_at_threshold: float
    mean_payoff_se: float
    replications: int
    rank_win_rates: Optional[np.ndarray] = None  # agents x ranks, unconditional
    searcher_rank_rates: Optional[np.ndarray] = None  # pooled per-searcher
    searcher_rank_se: Optional[np.ndarray] = None


@dataclass(frozen=True)
class GainEstimate:
    value: float
    std_error: float
    replications: int


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(chunk_index),))
    return np.random.Generator(np.random.Philox(seq))


def _resolve(d: CostDistribution, cfg: ContestConfig, sim: SimConfig):
    """Validate and normalize (n, thresholds, per-agent q, prizes)."""
    n = int(cfg.n)
    if n != cfg.n:
        raise InputError("simulation needs an integer field size n")
    thresholds = sim.thresholds
    if np.isscalar(thresholds):
        thr = np.full(n, float(thresholds))
    else:
        thr = np.asarray(thresholds, dtype=float)
        if thr.shape != (n,):
            raise InputError(f"expected {n} thresholds, got shape {thr.shape}")
    lo, hi = d.support()
    if np.any((thr < lo) | (thr > hi)):
        raise InputError("thresholds must lie inside the support")

    variant = sim.variant
    if isinstance(variant, PerAgentFind):
        q_arr = np.asarray(variant.q_values, dtype=float)
        if q_arr.shape != (n,):
            raise InputError(f"expected {n} find probabilities, got shape {q_arr.shape}")
    else:
        q_arr = np.full(n, cfg.q)

    if isinstance(variant, RankPrizes):
        if variant.structure.n != n:
            raise InputError(
                f"structure has {variant.structure.n} prizes but n = {n}"
            )
        prizes = np.asarray(variant.structure.values, dtype=float)
    else:
        prizes = None
    return n, thr, q_arr, prizes


def simulate(d: CostDistribution, cfg: ContestConfig, sim: SimConfig) -> SimEstimate:
    """Run the contest sim.replications times and aggregate outcomes."""
    n, thr, q_arr, prizes = _resolve(d, cfg, sim)
    variant = sim.variant
    reps = int(sim.replications)
    V = cfg.V
    F_thr = np.array([d.cdf(float(t)) for t in thr])
    qF = q_arr * F_thr
    inv_qF = np.where(qF > 0.0, 1.0 / np.where(qF > 0.0, qF, 1.0), 0.0)
    # With a common qF, winner/rank order is scale-invariant so the raw u
    # works; the expert comparison needs the rescaled U[0,1) conditional law.
    rescale = isinstance(variant, WithExpert) or not bool(np.all(qF == qF[0]))

    # Accumulators. X = per-replication searcher payout events, S = number
    # of searchers; their cross moments feed the ratio-estimator SEs.
    found_total = 0.0
    agent_wins = np.zeros(n)
    agent_searches = np.zeros(n)
    sum_X = sum_S = sum_XX = sum_SS = sum_XS = 0.0
    sum_pay = sum_pay_sq = sum_pay_S = 0.0  # per-replication prize totals
    sum_thr_searched = 0.0  # sum of thresholds over searching agents
    rank_counts = np.zeros((n, n)) if prizes is not None else None
    pooled_rank = np.zeros(n) if prizes is not None else None

    done = 0
    chunk_index = 0
    while done < reps:
        m = min(CHUNK_SIZE, reps - done)
        rng = _chunk_rng(sim.seed, chunk_index)
        u = rng.random((m, n))
        searched = u < F_thr[None, :]
        found = u < qF[None, :]

        if isinstance(variant, WithExpert):
            w = rng.random(m)
            expert_found = w < variant.q_e
            expert_score = np.where(expert_found, w / variant.q_e, -1.0) \
                if variant.q_e > 0.0 else np.full(m, -1.0)
        else:
            expert_found = None

        any_crowd = found.any(axis=1)
        if expert_found is None:
            success = any_crowd
        else:
            success = any_crowd | expert_found
        found_total += float(np.count_nonzero(success))

        masked = np.where(found, u * inv_qF[None, :] if rescale else u, -1.0)
        if prizes is None:
            if expert_found is None:
                crowd_wins_row = any_crowd
            elif variant.mode == "shared":
                # Expert competes in the tie-break when they find.
                best = masked.max(axis=1)
                crowd_wins_row = any_crowd & (~expert_found | (best > expert_score))
            else:
                # Expert keeps the prize whenever they find it.
                crowd_wins_row = any_crowd & ~expert_found
            winner_idx = masked.argmax(axis=1)
            X = crowd_wins_row.astype(float)
            pay = V * X
            np.add.at(agent_wins, winner_idx[crowd_wins_row], 1.0)
        else:
            # Rank finders by score; non-finders sort last with score -1.
            order = np.argsort(-masked, axis=1)
            position = np.argsort(order, axis=1)  # 0-based rank if found
            prize_got = np.where(found, prizes[np.minimum(position, n - 1)], 0.0)
            X = found.sum(axis=1).astype(float)  # finders all get some rank
            pay = prize_got.sum(axis=1)
            rank_of_finder = position[found]
            agent_of_finder = np.broadcast_to(np.arange(n), (m, n))[found]
            np.add.at(rank_counts, (agent_of_finder, rank_of_finder), 1.0)
            pooled_rank += np.bincount(rank_of_finder, minlength=n)

        S = searched.sum(axis=1).astype(float)
        searched_per_agent = searched.sum(axis=0)
        agent_searches += searched_per_agent
        sum_X += float(X.sum())
        sum_S += float(S.sum())
        sum_XX += float((X * X).sum())
        sum_SS += float((S * S).sum())
        sum_XS += float((X * S).sum())
        sum_pay += float(pay.sum())
        sum_pay_sq += float((pay * pay).sum())
        sum_pay_S += float((pay * S).sum())
        sum_thr_searched += float(searched_per_agent @ thr)

        done += m
        chunk_index += 1

    N = float(reps)
    p_success = found_total / N
    success_se = math.sqrt(max(p_success * (1.0 - p_success), 0.0) / N)

    if prizes is not None:
        agent_wins = rank_counts[:, 0].copy()
    win_rate = agent_wins / N
    win_se = np.sqrt(np.maximum(win_rate * (1.0 - win_rate), 0.0) / N)

    win_ratio, win_ratio_se = _ratio_estimate(sum_X, sum_S, sum_XX, sum_SS, sum_XS, N)

    # Payoff of a cutoff-cost agent: per-searcher expected prize minus the
    # search-weighted mean cutoff (= the common cutoff when symmetric).
    pay_ratio, pay_ratio_se = _ratio_estimate(
        sum_pay, sum_S, sum_pay_sq, sum_SS, sum_pay_S, N
    )
    mean_thr = sum_thr_searched / sum_S if sum_S > 0.0 else 0.0
    mean_payoff = pay_ratio - mean_thr

    if prizes is not None:
        rank_matrix = rank_counts / N
        pooled = np.empty(n)
        pooled_se = np.empty(n)
        for r in range(n):
            pooled[r], pooled_se[r] = _bernoulli_ratio(pooled_rank[r], sum_S, N)
        return SimEstimate(
            success_rate=p_success,
            success_se=success_se,
            searcher_win_rate=win_ratio,
            searcher_win_se=win_ratio_se,
            win_rate_per_agent=win_rate,
            win_rate_per_agent_se=win_se,
            mean_payoff_at_threshold=mean_payoff,
            mean_payoff_se=pay_ratio_se,
            replications=reps,
            rank_win_rates=rank_matrix,
            searcher_rank_rates=pooled,
            searcher_rank_se=pooled_se,
        )
    return SimEstimate(
        success_rate=p_success,
        success_se=success_se,
        searcher_win_rate=win_ratio,
        searcher_win_se=win_ratio_se,
        win_rate_per_agent=win_rate,
        win_rate_per_agent_se=win_se,
        mean_payoff_at_threshold=mean_payoff,
        mean_payoff_se=pay_ratio_se,
        replications=reps,
    )


def _ratio_estimate(sx, ss, sxx, sss, sxs, N):
    """Delta-method mean and SE for sum(X)/sum(S) over N replications."""
    if ss <= 0.0:
        return 0.0, 0.0
    mean_x = sx / N
    mean_s = ss / N
    ratio = sx / ss
    var_x = max(sxx / N - mean_x**2, 0.0)
    var_s = max(sss / N - mean_s**2, 0.0)
    cov = sxs / N - mean_x * mean_s
    var_ratio = (var_x - 2.0 * ratio * cov + ratio**2 * var_s) / (N * mean_s**2)
    return ratio, math.sqrt(max(var_ratio, 0.0))


def _bernoulli_ratio(successes: float, trials: float, N: float):
    """Rate and a binomial-style SE for pooled per-searcher counts."""
    if trials <= 0.0:
        return 0.0, 0.0
    p = successes / trials
    return p, math.sqrt(max(p * (1.0 - p), 0.0) / trials)


def deviation_gain(
    d: CostDistribution,
    cfg: ContestConfig,
    sim: SimConfig,
    at_cost: float,
) -> GainEstimate:
    """Estimated payoff gain from searching at a fixed cost.

    The tagged agent (sorted position 0 for per-agent variants) always
    searches at cost ``at_cost`` while rivals play the configured
    thresholds; the gain is their expected prize minus the cost. At the
    equilibrium cutoff this should be statistically indistinguishable
    from zero.
    """
    n, thr, q_arr, prizes = _resolve(d, cfg, sim)
    variant = sim.variant
    reps = int(sim.replications)
    V = cfg.V
    lo, hi = d.support()
    if not (lo <= at_cost <= hi):
        raise InputError(f"at_cost = {at_cost} outside support [{lo}, {hi}]")

    F_thr = np.array([d.cdf(float(t)) for t in thr])
    qF = q_arr * F_thr
    # The tagged agent (column 0) always searches, so their find chance is
    # the bare q rather than q F.
    qF_tagged = qF.copy()
    qF_tagged[0] = q_arr[0]
    inv_qF = np.where(qF_tagged > 0.0, 1.0 / np.where(qF_tagged > 0.0, qF_tagged, 1.0), 0.0)
    rival_inv = inv_qF[1:]
    # Rivals sharing one qF can be reduced in the raw u scale and rescaled
    # once after the row max.
    common_rival = rival_inv.size == 0 or bool(np.all(rival_inv == rival_inv[0]))

    sum_prize = 0.0
    sum_prize_sq = 0.0
    done = 0
    chunk_index = 0
    while done < reps:
        m = min(CHUNK_SIZE, reps - done)
        rng = _chunk_rng(sim.seed, chunk_index)
        u = rng.random((m, n))
        found = u < qF_tagged[None, :]

        if isinstance(variant, WithExpert):
            w = rng.random(m)
            expert_found = w < variant.q_e
            expert_score = np.where(expert_found, w / variant.q_e, -1.0) \
                if variant.q_e > 0.0 else np.full(m, -1.0)
        else:
            expert_found = None

        if prizes is None:
            tagged_score = np.where(found[:, 0], u[:, 0] * inv_qF[0], -1.0)
            if rival_inv.size == 0:
                rival_best = np.full(m, -1.0)
            elif common_rival:
                rival_best = np.where(found[:, 1:], u[:, 1:], -1.0).max(axis=1)
                rival_best *= float(rival_inv[0])
            else:
                rival_best = np.where(
                    found[:, 1:], u[:, 1:] * rival_inv[None, :], -1.0
                ).max(axis=1)
            tagged_best = found[:, 0] & (tagged_score > rival_best)
            if expert_found is None:
                tagged_wins = tagged_best
            elif variant.mode == "shared":
                tagged_wins = tagged_best & (
                    ~expert_found | (tagged_score > expert_score)
                )
            else:
                tagged_wins = tagged_best & ~expert_found
            prize_tagged = V * tagged_wins.astype(float)
        else:
            masked = np.where(found, u * inv_qF[None, :], -1.0)
            order = np.argsort(-masked, axis=1)
            position = np.argsort(order, axis=1)
            prize_tagged = np.where(
                found[:, 0], prizes[np.minimum(position[:, 0], n - 1)], 0.0
            )
        sum_prize += float(prize_tagged.sum())
        sum_prize_sq += float((prize_tagged * prize_tagged).sum())
        done += m
        chunk_index += 1

    N = float(reps)
    mean_prize = sum_prize / N
    var = max(sum_prize_sq / N - mean_prize**2, 0.0)
    return GainEstimate(
        value=mean_prize - at_cost,
        std_error=math.sqrt(var / N),
        replications=reps,
    )
