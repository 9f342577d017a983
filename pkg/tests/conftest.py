"""Shared test configuration.

Hypothesis runs derandomized so the suite is reproducible; no deadline
because some properties exercise slow exact-arithmetic oracles.
"""

from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")
