"""Shared fixtures: the demo-scenario physics on a small 8x8 grid."""

import numpy as np
import pytest

from helmprop import ParabolicProfile, make_grid, sample_profile

DEMO_WAVELENGTH = 1.3
DEMO_K0 = 2.0 * np.pi / DEMO_WAVELENGTH
DEMO_PROFILE = ParabolicProfile(n0_squared=1.45, depth=0.1, clamp_radius=25.0)


@pytest.fixture(scope="session")
def demo_profile():
    return DEMO_PROFILE


@pytest.fixture(scope="session")
def grid8():
    return make_grid(8, 1.0)


@pytest.fixture(scope="session")
def index8(grid8):
    return sample_profile(grid8, DEMO_PROFILE)
