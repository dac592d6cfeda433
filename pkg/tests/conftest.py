import os

from hypothesis import HealthCheck, settings

from alg2d.automorphisms import is_automorphism
from alg2d.linalg import gl2_enumerate

settings.register_profile(
    "default", max_examples=120, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def scalar_aut(A):
    """Slow reference: filter itertools-enumerated GL(2, q) through the exact residual."""
    return [g for g in gl2_enumerate(A.spec) if is_automorphism(A, g)]


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
