import math

import numpy as np
import pytest

from sol_curves.curves import CurveSpec, CoordSpec, eval_curve, frenet_frame, transform_curve, vertical_line
from sol_curves.errors import FrameInconsistency, OrderExhausted
from sol_curves.geometry import ISOMETRY_KINDS, IsometrySpec
from sol_curves.helix import helix_family_curve
from sol_curves.killing import constant_z_curve
from sol_curves.sampling import random_spec_jet, random_tangent_curve_jet
from sol_curves.tension import (
    frenet_components,
    frenet_curvature_identities,
    frenet_to_frame,
    nabla_powers_frenet,
    nabla_rows_frenet,
    r_tension,
    tension_field,
    tension_residual,
    triharmonic_direct,
    triharmonic_residual_direct,
    triharmonic_residual_frenet,
)

from coord_oracle import coord_tension

SQRT2 = math.sqrt(2.0)
# Frozen from the coordinate-route oracle: on the reference helix the
# triharmonic tension is N/4 and the biharmonic tension has norm 1/4.
HELIX_TRIHARMONIC_NORM = 0.25
HELIX_BIHARMONIC_NORM = 0.25


@pytest.mark.parametrize("r", [2, 3, 4])
def test_geodesic_tension_vanishes(r):
    for s in np.linspace(0, 1, 11):
        assert np.allclose(r_tension(vertical_line(), s, r), 0.0)
    # the x-axis is unit speed but not a geodesic (nabla_E1 E1 = -E3)
    line = CurveSpec(CoordSpec(0.0, 1.0))
    assert np.linalg.norm(r_tension(line, 0.0, r)) > 0


@pytest.mark.parametrize("r", [2, 3, 4])
def test_direct_tension_matches_coordinate_route(r, rng):
    for _ in range(8):
        cj = random_tangent_curve_jet(rng, order=2 * r + 1)
        assert np.allclose(tension_field(cj, r), coord_tension(cj, r), atol=1e-9, rtol=1e-10)


def test_two_routes_agree_on_random_curves(rng):
    for _ in range(25):
        for cj in (random_tangent_curve_jet(rng), random_spec_jet(rng)):
            f = frenet_frame(cj)
            direct = triharmonic_direct(cj)
            frenet = frenet_to_frame(f, frenet_components(f))
            assert np.allclose(direct, frenet, atol=1e-7)


def test_frenet_components_of_constant_helix_have_zero_tangential_part(rng):
    for _ in range(10):
        cj = random_spec_jet(rng)
        assert abs(frenet_components(frenet_frame(cj))[0]) <= 1e-12


def test_reference_helix_residual_is_quarter_normal(helix):
    """Both routes and the coordinate oracle give N/4, not zero."""
    for s in (-2.0, 0.0, 1.7):
        cj = eval_curve(helix, s)
        f = frenet_frame(cj)
        res = tension_residual(helix, s)
        assert res.norm == pytest.approx(HELIX_TRIHARMONIC_NORM, abs=1e-12)
        assert np.allclose(res.frenet_vec, (0.0, 0.25, 0.0), atol=1e-12)
        assert np.allclose(res.frame_vec, 0.25 * f.frame_matrix()[1], atol=1e-12)
        assert np.allclose(coord_tension(cj, 3), res.frame_vec, atol=1e-12)


def test_reference_helix_biharmonic_norm(helix):
    for s in (-2.0, 0.0, 1.7):
        assert np.linalg.norm(r_tension(helix, s, 2)) == pytest.approx(HELIX_BIHARMONIC_NORM, abs=1e-12)


def test_opposite_frame_sign_would_vanish():
    """The residual vanishes for the helix family only if B3 had the other sign.

    On the family with T3 = c1, res_N = a (a^4 + 2ab B3 c1 ...); evaluating the
    Frenet expression with the frame's B3 replaced by -B3 gives zero at c1 = 1/sqrt2.
    """
    cj = eval_curve(helix_family_curve(1 / SQRT2), 0.3)
    f = frenet_frame(cj)
    flipped = frenet_frame(cj)
    flipped.B = tuple(-c for c in f.B)
    assert frenet_components(f)[1] == pytest.approx(0.25, abs=1e-12)
    assert frenet_components(flipped)[1] == pytest.approx(0.0, abs=1e-12)


CLAIMED_ZERO = "claimed zero; the tension is N/4 under R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y]"


@pytest.mark.xfail(strict=True, reason=CLAIMED_ZERO)
@pytest.mark.parametrize("s", [-2.0, 0.0, 1.7])
def test_claimed_r3_tension_vanishes_on_helix(helix, s):
    assert np.linalg.norm(r_tension(helix, s, 3)) <= 1e-9


@pytest.mark.xfail(strict=True, reason=CLAIMED_ZERO)
def test_claimed_direct_residual_vanishes_on_helix(helix):
    assert np.linalg.norm(triharmonic_residual_direct(helix, 0.0)) <= 1e-9


@pytest.mark.xfail(strict=True, reason=CLAIMED_ZERO)
def test_claimed_frenet_residual_vanishes_on_helix(helix):
    assert max(map(abs, triharmonic_residual_frenet(helix, 0.0))) <= 1e-9


def test_constant_z_residual_shape():
    beta = math.pi / 6
    res_T, res_N, res_B = triharmonic_residual_frenet(constant_z_curve(beta), 0.0)
    k = abs(math.cos(2 * beta))
    assert abs(res_T) <= 1e-12 and abs(res_B) <= 1e-12
    assert res_N == pytest.approx(0.5 * k * (5 + math.cos(4 * beta)), rel=1e-12)


def test_curvature_identities(helix, rng):
    vals = frenet_curvature_identities(frenet_frame(eval_curve(helix, 0.0)))
    assert vals[0] == pytest.approx(0.0, abs=1e-12)
    assert vals[1] == pytest.approx(0.0, abs=1e-12)
    vals = frenet_curvature_identities(frenet_frame(eval_curve(constant_z_curve(0.2), 0.0)))
    assert vals[3] == 0.0
    for _ in range(20):
        frenet_curvature_identities(frenet_frame(random_tangent_curve_jet(rng)))


def test_curvature_identities_detect_bad_frame(helix):
    f = frenet_frame(eval_curve(helix, 0.0))
    f.N = tuple(c * 0.0 + v for c, v in zip(f.N, (0.0, 0.0, 1.0)))
    with pytest.raises(FrameInconsistency):
        frenet_curvature_identities(f)


def test_nabla_powers_frenet_examples():
    assert nabla_powers_frenet(0.7, 0.2, 1) == (0.0, 0.7, 0.0)
    assert np.allclose(nabla_powers_frenet(0.5, 0.5, 2), (-0.25, 0.0, 0.25))
    assert nabla_powers_frenet(0.5, 0.5, 5)[0] == 0.0
    with pytest.raises(ValueError):
        nabla_powers_frenet(0.0, 0.5, 2)
    with pytest.raises(ValueError):
        nabla_powers_frenet(0.5, 0.5, 4)


@pytest.mark.parametrize("k", [1, 2, 3, 5])
def test_nabla_rows_match_iterated_derivative(k, rng):
    from sol_curves.curves import nabla_powers, unit_tangent, values

    for _ in range(5):
        cj = random_tangent_curve_jet(rng, order=10)
        f = frenet_frame(cj)
        direct = values(nabla_powers(unit_tangent(cj), k)[-1])
        rows = nabla_rows_frenet(f.kappa.derivatives()[:5], f.tau.derivatives()[:4], k)
        assert np.allclose(direct, frenet_to_frame(f, rows), atol=1e-9)


@pytest.mark.parametrize("kind", ISOMETRY_KINDS)
def test_isometry_invariance(kind, rng):
    iso = IsometrySpec(kind, -0.61)
    for _ in range(5):
        spec = helix_family_curve(float(rng.uniform(0.2, 0.9)), float(rng.uniform(0.5, 2)),
                                  z_branch=int(rng.integers(1, 3)))
        image = transform_curve(iso, spec)
        for s in (-1.0, 0.5):
            f, g = frenet_frame(eval_curve(spec, s)), frenet_frame(eval_curve(image, s))
            assert g.kappa.value == pytest.approx(f.kappa.value, abs=1e-9)
            assert abs(g.tau.value) == pytest.approx(abs(f.tau.value), abs=1e-9)
            assert tension_residual(image, s).norm == pytest.approx(tension_residual(spec, s).norm, abs=1e-9)


def test_order_checks():
    cj = eval_curve(vertical_line(), 0.0, 5)
    with pytest.raises(OrderExhausted):
        triharmonic_direct(cj)
    with pytest.raises(ValueError):
        tension_field(eval_curve(vertical_line(), 0.0), 5)
