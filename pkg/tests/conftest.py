import random

import pytest

from epochsig.groups import generate_context


@pytest.fixture(scope="session")
def ctx():
    return generate_context()


@pytest.fixture
def rng():
    # fixed seed so failures replay
    return random.Random(0xC0FFEE)
