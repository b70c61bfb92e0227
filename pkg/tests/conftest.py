import random

import pytest
from hypothesis import settings

from ott.terms import Const, Signature

settings.register_profile("ott", deadline=None)
settings.load_profile("ott")


@pytest.fixture
def sig() -> Signature:
    return Signature().with_type("A").with_const("a", Const("A"))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(2077)
