import random

import hypothesis
import hypothesis.strategies as st
import pytest

from evoshape.expr import Env
from evoshape.genetics import GrowthParams, random_expression

hypothesis.settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[hypothesis.HealthCheck.too_slow],
)
hypothesis.settings.load_profile("default")

GROWTH = GrowthParams()


def expr_from_seed(seed: int, params: GrowthParams = GROWTH):
    return random_expression(params, random.Random(seed))


seeds = st.integers(min_value=0, max_value=2**32 - 1)
expressions = seeds.map(expr_from_seed)
coords = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False,
                   allow_infinity=False)
envs = st.builds(Env, coords, coords, coords, coords)


@pytest.fixture
def rng():
    return random.Random(1234)
