"""
공용 테스트 픽스처
"""
import numpy as np
import pytest

from app.lattice.grid import build_grid
from app.model.quantum_double import ground_state


def within_3_sigma(frequency: float, p: float, n: int) -> bool:
    """이항 분포 3σ 범위 검사"""
    sigma = np.sqrt(max(p * (1 - p), 1e-12) / n)
    return abs(frequency - p) <= 3 * sigma + 1e-12


@pytest.fixture
def within_band():
    return within_3_sigma


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def lat22():
    return build_grid(2, 2)


@pytest.fixture(scope="session")
def lat23():
    return build_grid(2, 3)


@pytest.fixture(scope="session")
def gs22(lat22):
    return ground_state(lat22)


@pytest.fixture(scope="session")
def gs23(lat23):
    return ground_state(lat23)
