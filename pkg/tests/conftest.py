from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

# derandomized so repeated runs see the same examples
settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture
def F():
    return Fraction
