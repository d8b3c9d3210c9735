"""
Shared pytest fixtures and configuration.

Test pyramid structure:
- a_unit/: Unit tests (fast, pure functions)
- b_integration/: Integration tests (Monte Carlo runs, theory against
  simulation, result files)
- c_e2e/: End-to-end tests (full CLI invocations)
"""

from __future__ import annotations

from pathlib import Path

import pytest

from risim.modulation import build_constellation
from risim.rng import make_rng


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line("markers", "unit: Unit tests (fast, pure functions)")
    config.addinivalue_line("markers", "integration: Integration tests (simulation and theory)")
    config.addinivalue_line("markers", "e2e: End-to-end tests (full CLI invocations)")
    config.addinivalue_line("markers", "slow: Tests that take longer to run")


def pytest_collection_modifyitems(config, items):
    """Auto-mark tests based on directory."""
    for item in items:
        # Get the test file path relative to tests/
        test_path = Path(item.fspath)
        parts = test_path.parts

        if "a_unit" in parts:
            item.add_marker(pytest.mark.unit)
        elif "b_integration" in parts:
            item.add_marker(pytest.mark.integration)
        elif "c_e2e" in parts:
            item.add_marker(pytest.mark.e2e)


# Common fixtures


@pytest.fixture
def rng():
    """Seeded generator, fresh for each test."""
    return make_rng(12345)


@pytest.fixture
def bpsk():
    return build_constellation("PSK", 2)


@pytest.fixture
def qpsk():
    """4-QAM (Gray-labelled QPSK)."""
    return build_constellation("QAM", 4)


@pytest.fixture
def qam16():
    return build_constellation("QAM", 16)


@pytest.fixture
def out_dir(tmp_path):
    """Provide a temporary directory for result files."""
    directory = tmp_path / "results"
    directory.mkdir()
    return directory


@pytest.fixture
def make_rng_pair():
    """Two generators with the same seed."""
    return make_rng(2024), make_rng(2024)
