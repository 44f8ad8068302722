"""Radial profile families: derivative chains, parity, and shape."""
import math

import numpy as np
import pytest

from bandflow import (
    ConstantProfile,
    CurvePowerProfile,
    GaussianProfile,
    HelmholtzProfile,
    PlateauProfile,
    PolynomialProfile,
)


def _check_derivatives(profile, radii, tol=5e-6):
    step = 2e-5
    chains = [
        (profile.value, profile.d1),
        (profile.d1, profile.d2),
        (profile.d2, profile.d3),
    ]
    for get, diff in chains:
        fd = (np.asarray(get(radii + step)) - np.asarray(get(radii - step))) / (2 * step)
        exact = np.asarray(diff(radii))
        scale = np.maximum(np.abs(exact), 1.0)
        assert np.max(np.abs(fd - exact) / scale) <= tol


def test_gaussian_chain(rng):
    f = GaussianProfile(0.01, 3.0)
    _check_derivatives(f, rng.uniform(-0.5, 0.5, 30))
    assert float(f.value(0.0)) == 1.0
    # curvature at the center comes straight from the decay rate
    assert math.isclose(float(f.d2(0.0)), -2.0 * 3.0 * 0.99, rel_tol=1e-12)


def test_curve_power_chain(band, rng):
    f = CurvePowerProfile(band, 6.0, 1e-3)
    _check_derivatives(f, rng.uniform(-0.9 * band.r_b, 0.9 * band.r_b, 30))
    assert math.isclose(float(f.value(0.0)), 1.0, rel_tol=1e-12)
    edge = float(f.value(band.r_b))
    assert 1e-3 < edge < 1.0


def test_plateau_shape(band, rng):
    r_b = band.r_b
    h = PlateauProfile(r_b, 0.4)
    inner = rng.uniform(-0.6 * r_b, 0.6 * r_b, 20)
    assert np.all(np.asarray(h.value(inner)) == 1.0)
    assert np.all(np.asarray(h.d1(inner)) == 0.0)
    assert float(h.value(r_b)) == 0.0
    assert float(h.value(-r_b)) == 0.0
    ramp = np.linspace(0.61 * r_b, 0.99 * r_b, 50)
    vals = np.asarray(h.value(ramp))
    assert np.all(np.diff(vals) < 0)
    assert np.all((vals >= 0) & (vals <= 1))
    # stay away from the joins where the fourth derivative jumps
    interior = rng.uniform(0.63 * r_b, 0.97 * r_b, 30)
    _check_derivatives(h, interior, tol=2e-5)


def test_plateau_validation(band):
    with pytest.raises(ValueError):
        PlateauProfile(band.r_b, 0.0)
    with pytest.raises(ValueError):
        PlateauProfile(band.r_b, 1.5)
    with pytest.raises(ValueError):
        PlateauProfile(-1.0, 0.5)


def test_helmholtz_construction(band, rng):
    rate = 2.0
    f = HelmholtzProfile(band, rate)
    assert float(f.value(0.0)) == 1.0
    assert float(f.d1(0.0)) == 0.0
    r = rng.uniform(-0.95 * band.r_b, 0.95 * band.r_b, 30)
    residual = (
        np.asarray(f.d2(r))
        - np.asarray(band.dc1(r)) / np.asarray(band.c1(r)) * np.asarray(f.d1(r))
        + rate * np.asarray(f.value(r))
    )
    assert np.max(np.abs(residual)) <= 1e-10
    _check_derivatives(f, r)


def test_parity_exact(band):
    r = np.array([0.05, 0.2, 0.45])
    for f in (
        GaussianProfile(0.01, 4.0),
        CurvePowerProfile(band, 8.0, 1e-2),
        PlateauProfile(band.r_b, 0.3),
        HelmholtzProfile(band, 1.5),
    ):
        assert np.array_equal(f.value(-r), f.value(r))
        assert np.array_equal(f.d1(-r), -np.asarray(f.d1(r)))


def test_polynomial_profile():
    f = PolynomialProfile((1.0, 0.0, -2.0))
    assert float(f.value(3.0)) == 1.0 - 18.0
    assert float(f.d1(3.0)) == -12.0
    assert float(f.d2(3.0)) == -4.0
    assert float(f.d3(3.0)) == 0.0


def test_algebraic_composition(rng):
    g = GaussianProfile(0.0, 2.0)
    r = rng.uniform(-0.8, 0.8, 25)
    doubled = 2.0 * g
    assert np.allclose(doubled.value(r), 2.0 * np.asarray(g.value(r)), rtol=1e-15)
    total = g + ConstantProfile(0.3)
    assert np.allclose(total.value(r), np.asarray(g.value(r)) + 0.3, rtol=1e-15)
    product = g * g
    _check_derivatives(product, r)
    assert np.allclose(product.value(r), np.asarray(g.value(r)) ** 2, rtol=1e-14)


def test_describe_tags(band):
    assert GaussianProfile(0.01, 1.0).describe()["family"] == "gaussian"
    assert CurvePowerProfile(band, 3.0, 1e-3).describe()["family"] == "curve-power"
    assert PlateauProfile(band.r_b, 0.5).describe()["family"] == "plateau"
    assert HelmholtzProfile(band, 1.0).describe()["family"] == "helmholtz"
    assert (GaussianProfile(0.0, 1.0) * ConstantProfile(2.0)).describe()["family"] == "product"


def test_family_validation(band):
    with pytest.raises(ValueError):
        GaussianProfile(1.0, 2.0)
    with pytest.raises(ValueError):
        GaussianProfile(0.1, 0.0)
    with pytest.raises(ValueError):
        CurvePowerProfile(band, 0.0, 1e-3)
