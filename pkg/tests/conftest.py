import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from cutbranch.geometry import LIMITS

# Exact LPs are slow relative to hypothesis' defaults.
settings.register_profile(
    "default", max_examples=40, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("ci", max_examples=15, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(autouse=True)
def _restore_limits():
    saved = dict(LIMITS.__dict__)
    yield
    LIMITS.update(**saved)


def pytest_terminal_summary(terminalreporter):
    # test_acceptance stashes its per-criterion verdicts here
    module = sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
