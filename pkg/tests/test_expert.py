import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from searchcontest import InputError
from searchcontest.distributions import PowerLaw, Uniform
from searchcontest.equilibrium import ContestConfig, solve_threshold, win_probability
from searchcontest.expert import (
    critical_expertise,
    solve_threshold_expert,
    success_probability_with_expert,
    win_probability_vs_certain_expert,
    win_probability_with_expert,
)

U01 = Uniform(0.0, 1.0)
P20 = PowerLaw(20.0)

# U[0,1], q = 1/2, n = 3: the (n+1)-agent cutoff and the expertise level
# that replicates a fourth agent, re-derived from the exact double sums.
C4_REF = 0.37587684137463606
QE_HAT_REF = 0.18793842068731803
P4_REF = 0.5651335995270929


@pytest.mark.parametrize(
    "F,q,n", [(0.3, 0.5, 1), (0.3, 0.5, 7), (0.9, 0.2, 10), (0.05, 1.0, 4), (1.0, 0.8, 6)]
)
def test_certain_expert_win_matches_double_sum(F, q, n):
    got = win_probability_vs_certain_expert(U01, q, float(n), F)
    assert got == pytest.approx(oracles.certain_expert_win_sum(F, q, n), abs=1e-13)


def test_certain_expert_win_at_zero_mass_is_coin_flip():
    assert win_probability_vs_certain_expert(U01, 0.6, 5.0, 0.0) == pytest.approx(
        0.3, abs=1e-13
    )


@given(q_e=st.floats(min_value=0.0, max_value=1.0))
def test_with_expert_is_a_mixture(q_e):
    base = win_probability_with_expert(U01, 0.5, 0.0, 4.0, 0.6)
    certain = win_probability_with_expert(U01, 0.5, 1.0, 4.0, 0.6)
    mixed = win_probability_with_expert(U01, 0.5, q_e, 4.0, 0.6)
    assert mixed == pytest.approx((1.0 - q_e) * base + q_e * certain, abs=1e-13)


def test_with_expert_at_zero_expertise_is_baseline():
    cfg = ContestConfig(n=4.0, q=0.5, V=1.0)
    assert win_probability_with_expert(U01, 0.5, 0.0, 4.0, 0.6) == win_probability(
        U01, cfg, 0.6
    )


def test_expertise_validation():
    with pytest.raises(InputError):
        win_probability_with_expert(U01, 0.5, -0.1, 4.0, 0.6)
    with pytest.raises(InputError):
        win_probability_with_expert(U01, 0.5, 1.1, 4.0, 0.6)
    with pytest.raises(InputError):
        solve_threshold_expert(U01, 0.5, 0.3, 4.0, 1.0, mode="bogus")


def test_critical_expertise_replicates_an_extra_agent():
    qe_hat = critical_expertise(U01, 0.5, 3.0, 1.0)
    assert qe_hat == pytest.approx(QE_HAT_REF, abs=1e-9)

    res = solve_threshold_expert(U01, 0.5, qe_hat, 3.0, 1.0)
    assert res.interior
    assert res.threshold == pytest.approx(C4_REF, abs=1e-9)
    assert res.residual <= 1e-9

    total = success_probability_with_expert(U01, 0.5, qe_hat, 3.0, 1.0)
    assert total == pytest.approx(P4_REF, abs=1e-9)
    # Same number as simply fielding four agents.
    four = solve_threshold(U01, ContestConfig(n=4.0, q=0.5, V=1.0))
    assert total == pytest.approx(four.success_prob, abs=1e-9)


def test_critical_expertise_second_family():
    qe_hat = critical_expertise(P20, 1.0, 3.0, 1.0)
    assert qe_hat == pytest.approx(0.08260477508266854, abs=1e-9)
    total = success_probability_with_expert(P20, 1.0, qe_hat, 3.0, 1.0)
    assert total == pytest.approx(0.2916858771903092, abs=1e-9)


def test_critical_expertise_needs_interior_larger_field():
    # With n+1 = 2 and V = 2.1 everyone searches: no interior cutoff.
    with pytest.raises(InputError):
        critical_expertise(U01, 1.0, 1.0, 2.1)


def test_expert_crowds_out_the_crowd():
    base = solve_threshold(U01, ContestConfig(n=5.0, q=0.5, V=1.0)).threshold
    prev = base
    for q_e in (0.2, 0.5, 0.9):
        c = solve_threshold_expert(U01, 0.5, q_e, 5.0, 1.0).threshold
        assert c < prev
        prev = c


def test_solution_satisfies_indifference():
    res = solve_threshold_expert(U01, 0.5, 0.3, 5.0, 1.0)
    c = res.threshold
    phi_e = win_probability_with_expert(U01, 0.5, 0.3, 5.0, c)
    assert c == pytest.approx(1.0 * phi_e, abs=1e-9)
    assert res.win_prob == pytest.approx(phi_e, abs=1e-15)


def test_expert_keeps_equals_discounted_prize():
    # If the expert keeps the prize on finding, the crowd plays the
    # baseline game at prize V(1 - q_e).
    q_e = 0.35
    kept = solve_threshold_expert(U01, 0.5, q_e, 5.0, 2.0, mode="expert_keeps")
    scaled = solve_threshold(U01, ContestConfig(n=5.0, q=0.5, V=2.0 * (1.0 - q_e)))
    assert kept.threshold == pytest.approx(scaled.threshold, abs=1e-10)


def test_total_success_increasing_in_expertise():
    vals = [
        success_probability_with_expert(U01, 0.5, q_e, 5.0, 1.0)
        for q_e in (0.0, 0.3, 0.7, 1.0)
    ]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    assert vals[-1] == 1.0
    assert vals[0] == pytest.approx(
        solve_threshold(U01, ContestConfig(n=5.0, q=0.5, V=1.0)).success_prob, abs=1e-12
    )


def test_low_prize_clamps_to_floor_with_expert():
    d = Uniform(0.5, 1.0)
    res = solve_threshold_expert(d, 0.5, 0.9, 4.0, 1.0)
    assert res.threshold == 0.5
    assert not res.interior
    assert res.success_prob == 0.0
