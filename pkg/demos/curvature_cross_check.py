#!/usr/bin/env python3
"""One curvature number, three unrelated computations.

The sectional-curvature integral for a zonal flow against a bump
perturbation has a one-dimensional closed form.  Nothing in that
derivation is trusted here: the same number is recomputed from the
two-dimensional reduced integral and from the raw definition with
brackets and covariant derivatives, and the three are printed side by
side.  A stream-potential perturbation exercises the two general routes
where the closed form does not apply.
"""
import math

from bandflow import (
    CurvePowerProfile,
    PlateauProfile,
    PolynomialProfile,
    SurfaceSpec,
    ZonalVelocityProfile,
    bump_field,
    field_from_stream,
    mc_bump_formula,
    mc_direct,
    mc_reduced,
    solve_profile,
    zonal_from_f,
)


def main():
    curve = solve_profile(SurfaceSpec(2.0, 0.5))
    f = CurvePowerProfile(curve, 6.0, 1e-3)
    big_f = ZonalVelocityProfile(f, curve)
    h = PlateauProfile(curve.r_b, 0.3)

    results = [
        mc_bump_formula(big_f, h, curve),
        mc_reduced(big_f, bump_field(h, curve)),
        mc_direct(zonal_from_f(f, curve), bump_field(h, curve)),
    ]
    print("bump perturbation, power profile p=6 on a=2, b=0.5:")
    for res in results:
        print(f"  {res.method:>18}: {res.value:+.12f}  (err <= {res.error_estimate:.1e})")
    spread = max(r.value for r in results) - min(r.value for r in results)
    print(f"  spread across routes: {spread:.2e}")

    r_b = curve.r_b
    # (r_b^2 - r^2)^2 (1 - 0.4 r^2): tangent at both boundary circles
    g = PolynomialProfile(
        (r_b**4, 0.0, -2.0 * r_b**2 - 0.4 * r_b**4, 0.0, 1.0 + 0.8 * r_b**2, 0.0, -0.4)
    )
    W = field_from_stream(g, curve, harmonic=2, phase=0.7)
    reduced = mc_reduced(big_f, W)
    direct = mc_direct(zonal_from_f(f, curve), W)
    print("\nstream perturbation, harmonic 2:")
    print(f"  {reduced.method:>18}: {reduced.value:+.12f}")
    print(f"  {direct.method:>18}: {direct.value:+.12f}")
    print(f"  disagreement: {abs(reduced.value - direct.value):.2e}")

    doubled = mc_bump_formula(ZonalVelocityProfile(2.0 * f, curve), h, curve)
    ratio = doubled.value / results[0].value
    print(f"\ndoubling the flow scales the integral by {ratio:.12f} (expect 4)")
    assert math.isclose(ratio, 4.0, rel_tol=1e-9)


if __name__ == "__main__":
    main()
