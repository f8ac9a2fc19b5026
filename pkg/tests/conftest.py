"""
Shared fixtures
"""

import numpy as np
import pytest
import structlog

from app.config import load_settings
from fixtures.scenes import overlap_scene


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def default_settings():
    return load_settings()


@pytest.fixture
def fixture_settings():
    """Settings shipped with the overlap scene"""
    return load_settings(None, alpha_l=60, beta_u=0.001)


@pytest.fixture(scope="session")
def scene():
    return overlap_scene(seed=0)


@pytest.fixture(scope="session")
def clean_scene():
    return overlap_scene(seed=0, noise=False)


@pytest.fixture(autouse=True)
def reset_logging():
    """CLI runs bind structlog to the current stderr; undo after each test"""
    yield
    structlog.reset_defaults()
