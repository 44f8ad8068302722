"""Shared fixtures: solved profile curves are expensive enough to cache."""
import numpy as np
import pytest

from bandflow import SurfaceSpec, solve_profile


@pytest.fixture(scope="session")
def sphere():
    return solve_profile(SurfaceSpec(1.0, 0.5))


@pytest.fixture(scope="session")
def band():
    # the workhorse surface used across modules
    return solve_profile(SurfaceSpec(2.0, 0.5))


@pytest.fixture(scope="session")
def wide_band():
    return solve_profile(SurfaceSpec(1.5, 0.7))


@pytest.fixture(scope="session")
def tall_band():
    return solve_profile(SurfaceSpec(3.0, 0.3))


@pytest.fixture()
def rng():
    return np.random.default_rng(20260815)
