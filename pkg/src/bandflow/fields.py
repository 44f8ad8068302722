"""Stream-function calculus and coordinate vector fields on the band.

Coordinates are (r, theta) with metric dr^2 + c1(r)^2 dtheta^2.  The Hodge
star follows the convention star(dr-direction) = -(1/c1) * theta-direction,
so a stream function psi induces the velocity u = star grad psi with
u = -(psi' / c1) dtheta-direction.  The three routes to the slope F' of the
vorticity-stream relation omega = F(psi) are implemented side by side and
kept deliberately independent: one through f, one through psi derivatives,
one through the gradient ratio.  Their agreement is a load-bearing check,
not a convenience.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from .errors import DivisionNearZero, QuadratureFailure
from .geometry import ProfileCurve
from .profiles import RadialProfile
from .quadrature import adaptive_gauss_legendre

__all__ = [
    "FIELD_COLUMNS",
    "HodgeCoefficients",
    "StreamFunction",
    "VectorField",
    "ZonalField",
    "ZonalVelocityProfile",
    "divergence",
    "fprime_from_f",
    "fprime_from_psi",
    "fprime_numerator",
    "fprime_ratio",
    "hodge_star",
    "radial_gradient",
    "radial_laplacian",
    "radial_table",
    "zonal_from_f",
]

FIELD_COLUMNS = ("r", "value", "d1", "d2", "d3")

_NEAR_ZERO = 1e-14


def _batched(x) -> tuple[np.ndarray, bool]:
    return np.atleast_1d(np.asarray(x, dtype=float)), np.asarray(x).ndim == 0


def _unbatched(values: np.ndarray, scalar: bool) -> float | np.ndarray:
    return float(values[0]) if scalar else values


@dataclass(frozen=True)
class HodgeCoefficients:
    """Coefficients of the Hodge star on the coordinate bases at a point.

    on_dr: theta-coefficient of star(partial_r), equal to -1/c1.
    on_dtheta: r-coefficient of star(partial_theta), equal to c1.
    on_form_dr: dtheta-coefficient of star(dr), equal to -c1.
    on_form_dtheta: dr-coefficient of star(dtheta), equal to 1/c1.
    """

    on_dr: float | np.ndarray
    on_dtheta: float | np.ndarray
    on_form_dr: float | np.ndarray
    on_form_dtheta: float | np.ndarray


def hodge_star(curve: ProfileCurve, r) -> HodgeCoefficients:
    """Hodge star coefficients at r; star of star is minus the identity."""
    arr, scalar = _batched(r)
    c1 = curve.frame(arr).c1
    return HodgeCoefficients(
        on_dr=_unbatched(-1.0 / c1, scalar),
        on_dtheta=_unbatched(c1.copy(), scalar),
        on_form_dr=_unbatched(-c1, scalar),
        on_form_dtheta=_unbatched(1.0 / c1, scalar),
    )


def radial_gradient(phi: RadialProfile, curve: ProfileCurve, r) -> float | np.ndarray:
    """The partial_r coefficient of grad phi for a radial function.

    The theta-coefficient vanishes identically for radial input; the curve
    argument only enforces the domain.
    """
    curve.frame(r)
    return phi.d1(r)


def radial_laplacian(phi: RadialProfile, curve: ProfileCurve, r) -> float | np.ndarray:
    """Laplace-Beltrami of a radial function: phi'' + (dc1/c1) phi'."""
    arr, scalar = _batched(r)
    fr = curve.frame(arr)
    d1 = np.atleast_1d(np.asarray(phi.d1(arr), dtype=float))
    d2 = np.atleast_1d(np.asarray(phi.d2(arr), dtype=float))
    return _unbatched(d2 + (fr.dc1 / fr.c1) * d1, scalar)


def fprime_numerator(f: RadialProfile, curve: ProfileCurve, r) -> float | np.ndarray:
    """The second-order combination f'' - (dc1/c1) f'.

    This is the numerator of the slope of the vorticity-stream relation;
    its sign against f decides the Arnold branch.
    """
    arr, scalar = _batched(r)
    fr = curve.frame(arr)
    d1 = np.atleast_1d(np.asarray(f.d1(arr), dtype=float))
    d2 = np.atleast_1d(np.asarray(f.d2(arr), dtype=float))
    return _unbatched(d2 - (fr.dc1 / fr.c1) * d1, scalar)


def fprime_from_f(f: RadialProfile, curve: ProfileCurve, r) -> float | np.ndarray:
    """Slope of the vorticity-stream relation as (f'' - (dc1/c1) f') / f."""
    arr, scalar = _batched(r)
    values = np.atleast_1d(np.asarray(f.value(arr), dtype=float))
    small = float(np.min(np.abs(values)))
    if small < _NEAR_ZERO:
        raise DivisionNearZero(f"|f| dropped to {small:.3e} on the requested points")
    num = np.atleast_1d(np.asarray(fprime_numerator(f, curve, arr), dtype=float))
    return _unbatched(num / values, scalar)


class StreamFunction(RadialProfile):
    """Stream function of the zonal flow generated by f, normalized to 0 at r=0.

    The value integrates f/c1 adaptively from the equator; the derivatives
    expand psi' = f/c1 through the curve's exact c1 chain, so the third
    derivative that the slope formula needs is free of numerical
    differencing.
    """

    def __init__(self, f: RadialProfile, curve: ProfileCurve, *, tol: float = 1e-9):
        self.f = f
        self.curve = curve
        self.tol = float(tol)

    def value(self, r):
        arr, scalar = _batched(r)

        def integrand(x: np.ndarray) -> np.ndarray:
            return np.asarray(self.f.value(x), dtype=float) / self.curve.frame(x).c1

        out = np.empty_like(arr)
        for i, radius in enumerate(arr):
            if radius == 0.0:
                out[i] = 0.0
                continue
            result = adaptive_gauss_legendre(
                integrand, 0.0, abs(radius), rel_tol=1e-10, abs_tol=1e-13
            )
            if result.error > self.tol:
                raise QuadratureFailure(
                    f"stream quadrature error {result.error:.3e} exceeds {self.tol:.3e}"
                )
            out[i] = math.copysign(result.value, radius)
        return _unbatched(out, scalar)

    def d1(self, r):
        arr, scalar = _batched(r)
        fr = self.curve.frame(arr)
        fv = np.atleast_1d(np.asarray(self.f.value(arr), dtype=float))
        return _unbatched(fv / fr.c1, scalar)

    def d2(self, r):
        arr, scalar = _batched(r)
        fr = self.curve.frame(arr)
        fv = np.atleast_1d(np.asarray(self.f.value(arr), dtype=float))
        fd = np.atleast_1d(np.asarray(self.f.d1(arr), dtype=float))
        return _unbatched(fd / fr.c1 - fv * fr.dc1 / fr.c1**2, scalar)

    def d3(self, r):
        arr, scalar = _batched(r)
        fr = self.curve.frame(arr)
        fv = np.atleast_1d(np.asarray(self.f.value(arr), dtype=float))
        fd = np.atleast_1d(np.asarray(self.f.d1(arr), dtype=float))
        fdd = np.atleast_1d(np.asarray(self.f.d2(arr), dtype=float))
        c1, dc1, ddc1 = fr.c1, fr.dc1, fr.ddc1
        out = (
            fdd / c1
            - 2.0 * fd * dc1 / c1**2
            - fv * ddc1 / c1**2
            + 2.0 * fv * dc1**2 / c1**3
        )
        return _unbatched(out, scalar)

    def describe(self) -> dict:
        return {"family": "stream", "f": self.f.describe()}


def _psi_slope_guard(d1: np.ndarray) -> None:
    small = float(np.min(np.abs(d1)))
    if small < _NEAR_ZERO:
        raise DivisionNearZero(
            f"|psi'| dropped to {small:.3e}; the flow is degenerate there"
        )


def fprime_from_psi(psi: StreamFunction, r) -> float | np.ndarray:
    """Slope via the three-term stream expansion.

    psi'''/psi' + (dc1/c1) psi''/psi' + (ddc1 c1 - dc1^2)/c1^2; equivalent
    to fprime_from_f wherever psi' does not vanish.
    """
    arr, scalar = _batched(r)
    fr = psi.curve.frame(arr)
    d1 = np.atleast_1d(np.asarray(psi.d1(arr), dtype=float))
    _psi_slope_guard(d1)
    d2 = np.atleast_1d(np.asarray(psi.d2(arr), dtype=float))
    d3 = np.atleast_1d(np.asarray(psi.d3(arr), dtype=float))
    c1, dc1, ddc1 = fr.c1, fr.dc1, fr.ddc1
    out = d3 / d1 + (dc1 / c1) * (d2 / d1) + (ddc1 * c1 - dc1**2) / c1**2
    return _unbatched(out, scalar)


def fprime_ratio(psi: StreamFunction, r) -> float | np.ndarray:
    """Slope as the gradient ratio omega' / psi'.

    omega = psi'' + (dc1/c1) psi' is differentiated analytically; no part
    of this route shares cancellations with fprime_from_psi.
    """
    arr, scalar = _batched(r)
    fr = psi.curve.frame(arr)
    d1 = np.atleast_1d(np.asarray(psi.d1(arr), dtype=float))
    _psi_slope_guard(d1)
    d2 = np.atleast_1d(np.asarray(psi.d2(arr), dtype=float))
    d3 = np.atleast_1d(np.asarray(psi.d3(arr), dtype=float))
    c1, dc1, ddc1 = fr.c1, fr.dc1, fr.ddc1
    omega_dot = d3 + (ddc1 / c1 - (dc1 / c1) ** 2) * d1 + (dc1 / c1) * d2
    return _unbatched(omega_dot / d1, scalar)


# 6th-order centered stencils used by the fallback derivatives
_D1_WEIGHTS = np.array([-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0]) / 60.0
_D2_WEIGHTS = np.array([2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0]) / 180.0
_OFFSETS = np.arange(-3, 4)


class VectorField(ABC):
    """Vector field u1 partial_r + u2 partial_theta on the band.

    Subclasses must provide the components; the derivative methods fall
    back to 6th-order finite differences (periodic in theta, stencil
    shifted inward near the radial boundary), and concrete fields shipped
    here override them with exact expressions.  Components must accept
    broadcastable (r, theta) arrays.
    """

    def __init__(self, curve: ProfileCurve):
        self.curve = curve

    @abstractmethod
    def u1(self, r, theta) -> np.ndarray: ...

    @abstractmethod
    def u2(self, r, theta) -> np.ndarray: ...

    def _theta_stencil(self, component, r, theta, weights, power: int) -> np.ndarray:
        d = 1e-2
        r_b, th_b = np.broadcast_arrays(
            np.asarray(r, dtype=float), np.asarray(theta, dtype=float)
        )
        acc = np.zeros_like(r_b, dtype=float)
        for k, w in zip(_OFFSETS, weights):
            if w != 0.0:
                acc = acc + w * np.asarray(component(r_b, th_b + k * d), dtype=float)
        return acc / d**power

    def du1_dtheta(self, r, theta) -> np.ndarray:
        return self._theta_stencil(self.u1, r, theta, _D1_WEIGHTS, 1)

    def d2u1_dtheta2(self, r, theta) -> np.ndarray:
        return self._theta_stencil(self.u1, r, theta, _D2_WEIGHTS, 2)

    def du2_dtheta(self, r, theta) -> np.ndarray:
        return self._theta_stencil(self.u2, r, theta, _D1_WEIGHTS, 1)

    def d2u2_dtheta2(self, r, theta) -> np.ndarray:
        return self._theta_stencil(self.u2, r, theta, _D2_WEIGHTS, 2)

    def du1_dr(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(
            np.asarray(r, dtype=float), np.asarray(theta, dtype=float)
        )
        bound = self.curve.r_b
        d = min(1e-2, bound / 4.0)
        flat_r = np.ravel(r_b)
        flat_t = np.ravel(th_b)
        out = np.empty_like(flat_r)
        for i, (ri, ti) in enumerate(zip(flat_r, flat_t)):
            center = min(max(ri, -bound + 3.0 * d), bound - 3.0 * d)
            nodes = center + _OFFSETS * d
            xi = (nodes - ri) / d
            vander = np.vander(xi, 7, increasing=True).T
            rhs = np.zeros(7)
            rhs[1] = 1.0
            weights = np.linalg.solve(vander, rhs) / d
            samples = np.asarray(self.u1(nodes, np.full(7, ti)), dtype=float)
            out[i] = float(np.dot(weights, samples))
        return out.reshape(r_b.shape)

    def is_boundary_tangent(self, *, tol: float = 1e-10, n_theta: int = 64) -> bool:
        """Whether u1 vanishes on both boundary circles (sampled)."""
        thetas = -math.pi + 2.0 * math.pi * np.arange(n_theta) / n_theta
        edge = np.array([-self.curve.r_b, self.curve.r_b])
        worst = float(
            np.max(np.abs(self.u1(edge[:, None], thetas[None, :])))
        )
        return worst <= tol


def divergence(field: VectorField, r, theta) -> np.ndarray:
    """Coordinate divergence (partial_r + dc1/c1) u1 + partial_theta u2.

    Serves as the verification oracle for every divergence-free claim in
    the package.
    """
    r_b, th_b = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(theta, dtype=float)
    )
    fr = field.curve.frame(np.ravel(r_b))
    weight = (fr.dc1 / fr.c1).reshape(r_b.shape)
    return (
        field.du1_dr(r_b, th_b)
        + weight * np.asarray(field.u1(r_b, th_b), dtype=float)
        + field.du2_dtheta(r_b, th_b)
    )


class ZonalVelocityProfile(RadialProfile):
    """Angular velocity -f/c1^2 of the zonal flow generated by f."""

    def __init__(self, f: RadialProfile, curve: ProfileCurve):
        self.f = f
        self.curve = curve

    def _chain(self, arr: np.ndarray):
        fr = self.curve.frame(arr)
        c1, dc1, ddc1, dddc1 = fr.c1, fr.dc1, fr.ddc1, fr.dddc1
        u = c1**-2.0
        du = -2.0 * c1**-3.0 * dc1
        ddu = 6.0 * c1**-4.0 * dc1**2 - 2.0 * c1**-3.0 * ddc1
        dddu = (
            -24.0 * c1**-5.0 * dc1**3
            + 18.0 * c1**-4.0 * dc1 * ddc1
            - 2.0 * c1**-3.0 * dddc1
        )
        return u, du, ddu, dddu

    def value(self, r):
        arr, scalar = _batched(r)
        u = self._chain(arr)[0]
        fv = np.atleast_1d(np.asarray(self.f.value(arr), dtype=float))
        return _unbatched(-fv * u, scalar)

    def d1(self, r):
        arr, scalar = _batched(r)
        u, du, _, _ = self._chain(arr)
        fv = np.atleast_1d(np.asarray(self.f.value(arr), dtype=float))
        fd = np.atleast_1d(np.asarray(self.f.d1(arr), dtype=float))
        return _unbatched(-(fd * u + fv * du), scalar)

    def d2(self, r):
        arr, scalar = _batched(r)
        u, du, ddu, _ = self._chain(arr)
        fv = np.atleast_1d(np.asarray(self.f.value(arr), dtype=float))
        fd = np.atleast_1d(np.asarray(self.f.d1(arr), dtype=float))
        fdd = np.atleast_1d(np.asarray(self.f.d2(arr), dtype=float))
        return _unbatched(-(fdd * u + 2.0 * fd * du + fv * ddu), scalar)

    def d3(self, r):
        arr, scalar = _batched(r)
        u, du, ddu, dddu = self._chain(arr)
        fv = np.atleast_1d(np.asarray(self.f.value(arr), dtype=float))
        fd = np.atleast_1d(np.asarray(self.f.d1(arr), dtype=float))
        fdd = np.atleast_1d(np.asarray(self.f.d2(arr), dtype=float))
        fddd = np.atleast_1d(np.asarray(self.f.d3(arr), dtype=float))
        return _unbatched(
            -(fddd * u + 3.0 * fdd * du + 3.0 * fd * ddu + fv * dddu), scalar
        )

    def describe(self) -> dict:
        return {"family": "zonal-velocity", "f": self.f.describe()}


class ZonalField(VectorField):
    """Purely rotational field coefficient(r) partial_theta."""

    def __init__(self, curve: ProfileCurve, coefficient: RadialProfile):
        super().__init__(curve)
        self.coefficient = coefficient

    def u1(self, r, theta) -> np.ndarray:
        r_b, _ = np.broadcast_arrays(
            np.asarray(r, dtype=float), np.asarray(theta, dtype=float)
        )
        return np.zeros_like(r_b)

    def u2(self, r, theta) -> np.ndarray:
        r_b, _ = np.broadcast_arrays(
            np.asarray(r, dtype=float), np.asarray(theta, dtype=float)
        )
        vals = np.atleast_1d(
            np.asarray(self.coefficient.value(np.ravel(r_b)), dtype=float)
        )
        return vals.reshape(r_b.shape)

    def du1_dr(self, r, theta) -> np.ndarray:
        return self.u1(r, theta)

    def du1_dtheta(self, r, theta) -> np.ndarray:
        return self.u1(r, theta)

    def d2u1_dtheta2(self, r, theta) -> np.ndarray:
        return self.u1(r, theta)

    def du2_dtheta(self, r, theta) -> np.ndarray:
        return self.u1(r, theta)

    def d2u2_dtheta2(self, r, theta) -> np.ndarray:
        return self.u1(r, theta)


def zonal_from_f(f: RadialProfile, curve: ProfileCurve) -> ZonalField:
    """The stationary zonal flow -f/c1^2 partial_theta generated by f."""
    return ZonalField(curve, ZonalVelocityProfile(f, curve))


def radial_table(profile: RadialProfile, radii) -> np.ndarray:
    """Rows of FIELD_COLUMNS for CSV export of a radial function."""
    arr = np.atleast_1d(np.asarray(radii, dtype=float))
    cols = [
        arr,
        np.atleast_1d(np.asarray(profile.value(arr), dtype=float)),
        np.atleast_1d(np.asarray(profile.d1(arr), dtype=float)),
        np.atleast_1d(np.asarray(profile.d2(arr), dtype=float)),
        np.atleast_1d(np.asarray(profile.d3(arr), dtype=float)),
    ]
    return np.column_stack(cols)
