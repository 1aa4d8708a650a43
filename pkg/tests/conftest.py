import pytest

from mcp_catenary.config import CatenaryConfig
from mcp_catenary.monoid import new_monoid


@pytest.fixture
def sequential():
    """Single-process configuration for deterministic, fork-free test runs."""
    return CatenaryConfig(workers=1)


@pytest.fixture
def fig1_monoid():
    return new_monoid([90, 91, 96, 120, 150])


@pytest.fixture
def base_3_8_13():
    return new_monoid([3, 8, 13])
