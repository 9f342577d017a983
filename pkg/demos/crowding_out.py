"""Crowding out: why a bigger field or a better expert can hurt.

Three exhibits, all under F(c) = c^20 with q = 1 and V = 1:

1. Sweeping n shows the success probability dip at n = 4 before it climbs
   again: extra searchers shave the cutoff faster than they add coverage.
2. The pointwise condition for success to rise with n flips from false to
   true between n = 3 and n = 5.
3. Adding a free expert with ability q_e can lower total success. At the
   critical expertise q F(c*(n+1)) the crowd behaves exactly as if one
   more strategic agent had joined, and total success drops from P*(3)
   to P*(4).
"""

from searchcontest.distributions import PowerLaw, Uniform
from searchcontest.equilibrium import (
    ContestConfig,
    q_bound_monotone_success,
    solve_threshold,
    success_increasing_in_n,
    sweep_n,
)
from searchcontest.expert import critical_expertise, success_probability_with_expert

LINE = "-" * 64


def main():
    d = PowerLaw(20.0)
    print(LINE)
    print("success probability along n (F(c) = c^20, q = 1, V = 1):")
    rows = sweep_n(d, 1.0, 1.0, [2, 3, 4, 5, 6, 8, 12])
    prev = None
    for n, res in rows:
        arrow = "" if prev is None else ("up" if res.success_prob > prev else "DOWN")
        print(f"  n={int(n):>3}  c*={res.threshold:.6f}  P*={res.success_prob:.6f}  {arrow}")
        prev = res.success_prob

    print(LINE)
    print("is success increasing in n at the current equilibrium?")
    for n in (3, 5):
        c = solve_threshold(d, ContestConfig(n=float(n), q=1.0, V=1.0)).threshold
        print(f"  at c*({n}): {success_increasing_in_n(d, 1.0, c)}")
    print("  (the dip in the table above is exactly this flag turning false)")

    print(LINE)
    print("ability ceiling for always-increasing success:")
    for dist, label in ((Uniform(0.0, 1.0), "uniform on [0, 1]"), (d, "F(c) = c^20")):
        print(f"  {label}: success rises with n for all q <= "
              f"{q_bound_monotone_success(dist):.6f}")

    print(LINE)
    print("the expert who subtracts (n = 3):")
    p3 = solve_threshold(d, ContestConfig(n=3.0, q=1.0, V=1.0)).success_prob
    p4 = solve_threshold(d, ContestConfig(n=4.0, q=1.0, V=1.0)).success_prob
    qe_hat = critical_expertise(d, 1.0, 3.0, 1.0)
    print(f"  no expert:                      P = {p3:.6f}")
    for q_e in (0.25 * qe_hat, qe_hat):
        total = success_probability_with_expert(d, 1.0, q_e, 3.0, 1.0)
        print(f"  expert with q_e = {q_e:.4f}:       P = {total:.6f}")
    print(f"  four agents, no expert:         P = {p4:.6f}")
    print(f"  at the critical expertise {qe_hat:.4f} the expert replicates a")
    print("  fourth agent, and total success falls despite the free help.")


if __name__ == "__main__":
    main()
