import numpy as np
import pytest

from telegraphkit import TelegraphParams


@pytest.fixture
def symmetric_unit() -> TelegraphParams:
    return TelegraphParams(1.0, 1.0, 1.0, -1.0)


@pytest.fixture
def asymmetric_opposite() -> TelegraphParams:
    return TelegraphParams(1.3, 0.7, 1.5, -0.6)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
