"""Pytest configuration and shared fixtures for cvmfe tests."""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

# Add src to path for testing
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from cvmfe.lattice.grid import GridState, from_text, new_random  # noqa: E402

EPS1_H12 = math.log(1.2) / 2.0


@pytest.fixture
def temp_dir(tmp_path: Path) -> Path:
    """Return a temporary directory for test output."""
    return tmp_path


@pytest.fixture
def eps1_h12() -> float:
    """Interaction enthalpy of the h = 1.2 world."""
    return EPS1_H12


@pytest.fixture
def striped_grid() -> GridState:
    """4x4 grid of alternating full rows AAAA/BBBB/AAAA/BBBB."""
    return from_text("1111\n0000\n1111\n0000\n")


@pytest.fixture
def all_a_grid() -> GridState:
    return GridState(np.ones((4, 4), dtype=np.int8))


@pytest.fixture
def random_grid() -> GridState:
    """Balanced random 16x16 grid from seed 7."""
    return new_random(16, 16, seed=7)


@pytest.fixture
def small_joint_table() -> np.ndarray:
    return np.array([[0.1, 0.2], [0.3, 0.4]])


def pytest_configure(config):
    """Configure pytest with custom markers."""
    config.addinivalue_line("markers", "slow: mark test as slow running")
    config.addinivalue_line("markers", "integration: mark test as integration test")
    config.addinivalue_line("markers", "unit: mark test as unit test")
    config.addinivalue_line("markers", "performance: mark test as timing sensitive")
