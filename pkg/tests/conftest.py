"""
Pytest configuration and shared fixtures.

Provides cleanup hooks and small closed-loop pairs used across test modules.
"""

import gc

import numpy as np
import pytest

from whtrim.jsr import ClosedLoopPair


@pytest.fixture(autouse=True)
def cleanup_after_test():
    """
    Automatically cleanup after each test.

    Large automata and lifted systems hold big numpy arrays; collect them
    before the next test builds its own.
    """
    yield
    gc.collect()


@pytest.fixture(autouse=True, scope="session")
def session_cleanup():
    """Cleanup at session start and end."""
    gc.collect()
    yield
    gc.collect()


@pytest.fixture
def isolated_config(monkeypatch, tmp_path):
    """Point the config directory at a temporary path and clear env overrides."""
    monkeypatch.setattr("whtrim.config.core.get_config_dir", lambda: tmp_path)
    monkeypatch.delenv("WHTRIM_STATE_BUDGET", raising=False)
    return tmp_path


def rotation(theta: float) -> np.ndarray:
    """2x2 rotation matrix."""
    return np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])


@pytest.fixture
def contracting_pair():
    """Hit halves the state, miss zeroes it: stable under any constraint."""
    return ClosedLoopPair("contracting", 0.5 * np.eye(2), np.zeros((2, 2)))


@pytest.fixture
def rotation_pair():
    """Scaled rotation on hits, identity (hold) on misses."""
    return ClosedLoopPair("rotation", 0.5 * rotation(0.3), np.eye(2))


@pytest.fixture
def unstable_pair():
    """Nominal dynamics already unstable."""
    return ClosedLoopPair("unstable", 1.2 * np.eye(2), np.eye(2))
