"""Misiolek curvature of zonal flows against bump-generated perturbations.

Three independent routes compute the same number.  The 1-d closed form
integrates pi F^2 c1 (h^2 eps^2 - c1^2 h'^2) radially; the reduced 2-d
route integrates the quadratic expression in the perturbation's radial
component over the full band; the direct route assembles Lie brackets and
covariant derivatives from the connection coefficients and integrates the
raw metric pairing.  The direct route shares no algebra with the other
two, which is what makes the three-way agreement a genuine oracle rather
than a tautology.

Sign conventions follow the package's Hodge star; the area form is
c1 dr wedge dtheta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import BoundaryViolation, TangencyViolation
from .fields import VectorField, ZonalField, divergence
from .geometry import ProfileCurve
from .profiles import RadialProfile
from .quadrature import adaptive_gauss_legendre

__all__ = [
    "MC_METHODS",
    "MC_SAMPLE_COLUMNS",
    "BumpField",
    "MCResult",
    "StreamPotentialField",
    "bump_field",
    "field_from_stream",
    "mc_bump_formula",
    "mc_direct",
    "mc_reduced",
    "optimal_bump_ratio",
]

MC_METHODS = ("formula-1d", "reduced-2d", "direct-geometric")
MC_SAMPLE_COLUMNS = ("r", "integrand")

_BUMP_EDGE_TOL = 1e-12
_TANGENCY_TOL = 1e-10
_DIVERGENCE_TOL = 1e-8
_SAMPLE_POINTS = 401


@dataclass(frozen=True)
class MCResult:
    """One curvature evaluation: value, method tag, and quadrature budget.

    error_estimate covers the adaptive radial quadrature; the angular
    direction is spectrally converged for the shipped trigonometric
    integrands.  samples holds (r, radial integrand) rows for plotting and
    is not part of the serialized result.
    """

    value: float
    method: str
    error_estimate: float
    n_nodes: int
    samples: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def significant(self) -> bool:
        """Whether the value stands clear of its own error estimate."""
        return abs(self.value) > 10.0 * self.error_estimate

    def to_json(self) -> dict:
        # samples are a CSV concern; the JSON form is exactly these four keys
        return {
            "value": self.value,
            "method": self.method,
            "error_estimate": self.error_estimate,
            "n_nodes": self.n_nodes,
        }


def _check_bump(h: RadialProfile, curve: ProfileCurve) -> None:
    edge = float(np.max(np.abs(np.asarray(h.value(np.array([-curve.r_b, curve.r_b]))))))
    if edge > _BUMP_EDGE_TOL:
        raise BoundaryViolation(
            f"bump reaches {edge:.3e} at the boundary circles (tolerance {_BUMP_EDGE_TOL:.0e})"
        )


class BumpField(VectorField):
    """The divergence-free perturbation generated by a radial bump h.

    Components are h sin(theta) radially and (h' + h dc1/c1) cos(theta)
    angularly; equivalently the field is star grad of -c1 h cos(theta).
    The divergence cancels exactly, not just numerically.
    """

    def __init__(self, curve: ProfileCurve, h: RadialProfile):
        super().__init__(curve)
        _check_bump(h, curve)
        self.h = h

    def _angular_coeff(self, r: np.ndarray) -> np.ndarray:
        fr = self.curve.frame(np.ravel(r))
        hv = np.asarray(self.h.value(np.ravel(r)), dtype=float)
        hd = np.asarray(self.h.d1(np.ravel(r)), dtype=float)
        return (hd + hv * fr.dc1 / fr.c1).reshape(np.shape(r))

    def _bump(self, r: np.ndarray) -> np.ndarray:
        return np.asarray(self.h.value(r), dtype=float)

    def u1(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return self._bump(r_b) * np.sin(th_b)

    def u2(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return self._angular_coeff(r_b) * np.cos(th_b)

    def du1_dr(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return np.asarray(self.h.d1(r_b), dtype=float) * np.sin(th_b)

    def du1_dtheta(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return self._bump(r_b) * np.cos(th_b)

    def d2u1_dtheta2(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return -self._bump(r_b) * np.sin(th_b)

    def du2_dtheta(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return -self._angular_coeff(r_b) * np.sin(th_b)

    def d2u2_dtheta2(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return -self._angular_coeff(r_b) * np.cos(th_b)


def bump_field(h: RadialProfile, curve: ProfileCurve) -> BumpField:
    """Build the perturbation field of a bump vanishing at the boundary."""
    return BumpField(curve, h)


class StreamPotentialField(VectorField):
    """star grad of the separable potential g(r) cos(m theta + phase).

    Divergence-free by construction; tangency needs g to vanish at the
    boundary circles whenever m >= 1 (a radial potential, m = 0, is
    always tangent).
    """

    def __init__(
        self,
        curve: ProfileCurve,
        g: RadialProfile,
        *,
        harmonic: int = 1,
        phase: float = 0.0,
    ):
        super().__init__(curve)
        if harmonic < 0:
            raise ValueError(f"harmonic index must be nonnegative, got {harmonic}")
        if harmonic >= 1:
            edge = float(
                np.max(np.abs(np.asarray(g.value(np.array([-curve.r_b, curve.r_b])))))
            )
            if edge > _TANGENCY_TOL:
                raise TangencyViolation(
                    f"potential reaches {edge:.3e} at the boundary; the field "
                    f"would cross the boundary circles"
                )
        self.g = g
        self.harmonic = int(harmonic)
        self.phase = float(phase)

    def _angle(self, theta: np.ndarray) -> np.ndarray:
        return self.harmonic * theta + self.phase

    def u1(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        c1 = self.curve.frame(np.ravel(r_b)).c1.reshape(r_b.shape)
        gv = np.asarray(self.g.value(r_b), dtype=float)
        return -self.harmonic * gv * np.sin(self._angle(th_b)) / c1

    def u2(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        c1 = self.curve.frame(np.ravel(r_b)).c1.reshape(r_b.shape)
        gd = np.asarray(self.g.d1(r_b), dtype=float)
        return -gd * np.cos(self._angle(th_b)) / c1

    def du1_dr(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        fr = self.curve.frame(np.ravel(r_b))
        c1 = fr.c1.reshape(r_b.shape)
        dc1 = fr.dc1.reshape(r_b.shape)
        gv = np.asarray(self.g.value(r_b), dtype=float)
        gd = np.asarray(self.g.d1(r_b), dtype=float)
        radial = (gd * c1 - gv * dc1) / c1**2
        return -self.harmonic * radial * np.sin(self._angle(th_b))

    def du1_dtheta(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        c1 = self.curve.frame(np.ravel(r_b)).c1.reshape(r_b.shape)
        gv = np.asarray(self.g.value(r_b), dtype=float)
        return -self.harmonic**2 * gv * np.cos(self._angle(th_b)) / c1

    def d2u1_dtheta2(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        c1 = self.curve.frame(np.ravel(r_b)).c1.reshape(r_b.shape)
        gv = np.asarray(self.g.value(r_b), dtype=float)
        return self.harmonic**3 * gv * np.sin(self._angle(th_b)) / c1

    def du2_dtheta(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        c1 = self.curve.frame(np.ravel(r_b)).c1.reshape(r_b.shape)
        gd = np.asarray(self.g.d1(r_b), dtype=float)
        return self.harmonic * gd * np.sin(self._angle(th_b)) / c1

    def d2u2_dtheta2(self, r, theta) -> np.ndarray:
        r_b, th_b = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        c1 = self.curve.frame(np.ravel(r_b)).c1.reshape(r_b.shape)
        gd = np.asarray(self.g.d1(r_b), dtype=float)
        return self.harmonic**2 * gd * np.cos(self._angle(th_b)) / c1


def field_from_stream(
    g: RadialProfile,
    curve: ProfileCurve,
    *,
    harmonic: int = 1,
    phase: float = 0.0,
) -> StreamPotentialField:
    """Divergence-free field from a separable stream potential."""
    return StreamPotentialField(curve, g, harmonic=harmonic, phase=phase)


def _theta_nodes(n_theta: int) -> np.ndarray:
    # periodic trapezoid: -pi counted once, +pi excluded as the same point
    return -math.pi + 2.0 * math.pi * np.arange(n_theta) / n_theta


def _radial_quadrature(
    density, curve: ProfileCurve, rel_tol: float, per_node: int
) -> tuple[float, float, int, np.ndarray]:
    result = adaptive_gauss_legendre(
        density, -curve.r_b, curve.r_b, rel_tol=rel_tol, abs_tol=1e-12
    )
    grid = np.linspace(-curve.r_b, curve.r_b, _SAMPLE_POINTS)
    samples = np.column_stack([grid, density(grid)])
    return result.value, result.error, result.n_evals * per_node, samples


def mc_bump_formula(
    F: RadialProfile,
    h: RadialProfile,
    curve: ProfileCurve,
    *,
    rel_tol: float = 1e-8,
) -> MCResult:
    """Closed-form radial integral of the curvature for the bump family.

    Integrand pi F^2 c1 (h^2 eps^2 - c1^2 h'^2) with eps^2 expanded as
    dc1^2 - c1 ddc1 - 1; the defect term is the only positive contribution
    and vanishes identically on the sphere.
    """
    _check_bump(h, curve)

    def density(r: np.ndarray) -> np.ndarray:
        fr = curve.frame(r)
        eps_sq = fr.dc1**2 - fr.c1 * fr.ddc1 - 1.0
        fv = np.asarray(F.value(r), dtype=float)
        hv = np.asarray(h.value(r), dtype=float)
        hd = np.asarray(h.d1(r), dtype=float)
        return (
            math.pi
            * fv**2
            * fr.c1
            * (hv**2 * eps_sq - fr.c1**2 * hd**2)
        )

    value, error, nodes, samples = _radial_quadrature(density, curve, rel_tol, 1)
    return MCResult(
        value=value,
        method="formula-1d",
        error_estimate=error,
        n_nodes=nodes,
        samples=samples,
    )


def _require_admissible(W: VectorField, n_probe: int = 12) -> None:
    if not W.is_boundary_tangent(tol=_TANGENCY_TOL):
        raise TangencyViolation(
            "perturbation field does not vanish radially at the boundary circles"
        )
    interior = np.linspace(-W.curve.r_b, W.curve.r_b, n_probe + 2)[1:-1]
    thetas = _theta_nodes(n_probe)
    worst = float(np.max(np.abs(divergence(W, interior[:, None], thetas[None, :]))))
    if worst > _DIVERGENCE_TOL:
        raise ValueError(
            f"perturbation field has divergence {worst:.3e}; the reduced "
            f"integral only applies to divergence-free fields"
        )


def mc_reduced(
    F: RadialProfile,
    W: VectorField,
    *,
    rel_tol: float = 1e-8,
    n_theta: int = 256,
) -> MCResult:
    """Two-dimensional curvature integral in terms of the radial component.

    Refuses fields that are not boundary-tangent and divergence-free; the
    reduction is only valid under those hypotheses, so violating inputs
    get an error rather than a number.
    """
    _require_admissible(W)
    curve = W.curve
    thetas = _theta_nodes(n_theta)
    weight = 2.0 * math.pi / n_theta

    def density(r: np.ndarray) -> np.ndarray:
        fr = curve.frame(r)
        fv = np.asarray(F.value(r), dtype=float)
        rr = r[:, None]
        tt = thetas[None, :]
        w1 = W.u1(rr, tt)
        dw1_dth = W.du1_dtheta(rr, tt)
        dw1_dr = W.du1_dr(rr, tt)
        c1 = fr.c1[:, None]
        sharpness = (fr.dc1**2 - fr.c1 * fr.ddc1)[:, None]
        cell = -dw1_dth**2 - c1**2 * dw1_dr**2 + sharpness * w1**2
        return (fv**2 * fr.c1) * cell.sum(axis=1) * weight

    value, error, nodes, samples = _radial_quadrature(density, curve, rel_tol, n_theta)
    return MCResult(
        value=value,
        method="reduced-2d",
        error_estimate=error,
        n_nodes=nodes,
        samples=samples,
    )


def mc_direct(
    Z: ZonalField,
    W: VectorField,
    *,
    rel_tol: float = 1e-8,
    n_theta: int = 256,
) -> MCResult:
    """Curvature from the definition: brackets, connection, metric pairing.

    Computes [Z, W] componentwise, applies the covariant derivatives along
    Z and along the bracket via the Christoffel coefficients, pairs with W
    under g = diag(1, c1^2) and integrates against the area form c1 dr
    dtheta.  Knows nothing of the reductions it is used to validate.
    """
    if not isinstance(Z, ZonalField):
        raise ValueError("the base flow must be a zonal field")
    if Z.curve is not W.curve and Z.curve.spec != W.curve.spec:
        raise ValueError("base flow and perturbation live on different surfaces")
    curve = W.curve
    coeff = Z.coefficient
    thetas = _theta_nodes(n_theta)
    weight = 2.0 * math.pi / n_theta

    def density(r: np.ndarray) -> np.ndarray:
        fr = curve.frame(r)
        big_f = np.asarray(coeff.value(r), dtype=float)[:, None]
        big_f_dot = np.asarray(coeff.d1(r), dtype=float)[:, None]
        gamma_r = (-fr.c1 * fr.dc1)[:, None]
        gamma_th = (fr.dc1 / fr.c1)[:, None]
        c1 = fr.c1[:, None]
        rr = r[:, None]
        tt = thetas[None, :]

        w1 = W.u1(rr, tt)
        w2 = W.u2(rr, tt)
        b1 = big_f * W.du1_dtheta(rr, tt)
        b2 = big_f * W.du2_dtheta(rr, tt) - big_f_dot * w1
        db1_dth = big_f * W.d2u1_dtheta2(rr, tt)
        db2_dth = big_f * W.d2u2_dtheta2(rr, tt) - big_f_dot * W.du1_dtheta(rr, tt)

        nabla_z_br = big_f * (db1_dth + gamma_r * b2)
        nabla_z_bth = big_f * (db2_dth + gamma_th * b1)
        nabla_b_zr = big_f * gamma_r * b2
        nabla_b_zth = b1 * (big_f_dot + big_f * gamma_th)

        paired = (nabla_z_br + nabla_b_zr) * w1 + c1**2 * (
            nabla_z_bth + nabla_b_zth
        ) * w2
        return (paired * c1).sum(axis=1) * weight

    value, error, nodes, samples = _radial_quadrature(density, curve, rel_tol, n_theta)
    return MCResult(
        value=value,
        method="direct-geometric",
        error_estimate=error,
        n_nodes=nodes,
        samples=samples,
    )


def optimal_bump_ratio(F: RadialProfile, curve: ProfileCurve, n: int = 4000) -> float:
    """Infimum over all admissible bumps of the negative-to-positive ratio.

    The 1-d form splits as gain minus penalty: positive curvature needs
    the h^2-weighted gain to beat the h'^2-weighted penalty.  Minimizing
    penalty over gain across every h vanishing at the band edges is a
    generalized eigenvalue problem; a value below one means some bump
    certifies this flow, a value at or above one means none does, plateau
    or otherwise.  On the round sphere the gain weight vanishes and the
    ratio is infinite.
    """
    if n < 16:
        raise ValueError("grid too coarse for the eigenvalue bound")
    r_b = curve.r_b
    r = np.linspace(-r_b, r_b, n + 1)
    step = r[1] - r[0]
    mid = 0.5 * (r[:-1] + r[1:])
    fm = curve.frame(mid)
    fi = curve.frame(r[1:-1])
    big_f_mid = np.asarray(F.value(mid), dtype=float)
    big_f_int = np.asarray(F.value(r[1:-1]), dtype=float)
    eps_sq = fi.dc1**2 - fi.c1 * fi.ddc1 - 1.0
    penalty = big_f_mid**2 * fm.c1**3
    gain = big_f_int**2 * fi.c1 * np.maximum(eps_sq, 0.0)
    peak = float(np.max(gain))
    if peak <= 1e-12 * float(np.max(penalty)):
        return math.inf
    # flooring the mass where the defect vanishes perturbs the bound by O(floor)
    gain = np.maximum(gain, 1e-14 * peak)
    diag = (penalty[:-1] + penalty[1:]) / step**2
    off = -penalty[1:-1] / step**2
    scale = 1.0 / np.sqrt(gain)
    vals = eigh_tridiagonal(
        diag * scale * scale,
        off * scale[:-1] * scale[1:],
        select="i",
        select_range=(0, 0),
    )[0]
    return float(vals[0])
