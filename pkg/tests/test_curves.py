import json
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sol_curves.curves import (
    CoordSpec,
    CurveSpec,
    covariant_derivative,
    eval_curve,
    frenet_frame,
    geodesic_curvature_sq,
    iterated_covariant,
    speed_deviation,
    torsion,
    transform_curve,
    unit_tangent,
    values,
    vertical_components,
    vertical_line,
)
from sol_curves.errors import GeodesicDegeneracy, NotUnitSpeed, TorsionUndefined
from sol_curves.geometry import ISOMETRY_KINDS, IsometrySpec, apply_isometry
from sol_curves.jets import jet_constant
from sol_curves.killing import constant_z_curve
from sol_curves.sampling import random_tangent_curve_jet, random_unit_speed_spec

from coord_oracle import coord_nabla

SQRT2 = math.sqrt(2.0)


def const_vec(v, order=3):
    return tuple(jet_constant(c, order) for c in v)


def test_eval_curve_examples(helix):
    cj = eval_curve(vertical_line(), 1.0, 2)
    assert cj.zj.coeffs.tolist() == [1, 1, 0]
    assert cj.xj.coeffs.tolist() == [0, 0, 0] and cj.yj.coeffs.tolist() == [0, 0, 0]
    cj = eval_curve(helix, 0.0)
    assert np.allclose(cj.point, (-1 / SQRT2, 1 / SQRT2, 0), atol=1e-15)
    assert np.allclose([cj.xj.derivative(1), cj.yj.derivative(1), cj.zj.derivative(1)],
                       (0.5, 0.5, 1 / SQRT2), atol=1e-15)


def test_unit_tangent_examples(helix):
    assert values(unit_tangent(eval_curve(vertical_line(), 0.3))).tolist() == [0, 0, 1]
    assert np.allclose(values(unit_tangent(eval_curve(helix, 0.0))), (0.5, 0.5, 1 / SQRT2))
    beta = 0.4
    T = values(unit_tangent(eval_curve(constant_z_curve(beta, c=0.3, cx=1, cy=-2), 1.1)))
    assert np.allclose(T, (math.cos(beta), math.sin(beta), 0), atol=1e-14)


def test_not_unit_speed():
    spec = CurveSpec(x=CoordSpec(linear=2.0))
    with pytest.raises(NotUnitSpeed):
        unit_tangent(eval_curve(spec, 0.0))


def test_covariant_derivative_examples(helix):
    out = covariant_derivative(const_vec((0, 0, 1)), const_vec((1, 0, 0)))
    assert values(out).tolist() == [0, 0, 0]
    out = covariant_derivative(const_vec((1, 0, 0)), const_vec((1, 0, 0)))
    assert values(out).tolist() == [0, 0, -1]
    T = unit_tangent(eval_curve(helix, 0.0))
    assert np.linalg.norm(values(covariant_derivative(T, T))) == pytest.approx(0.5, abs=1e-14)


def test_covariant_derivative_matches_coordinate_route(rng):
    for _ in range(10):
        cj = random_tangent_curve_jet(rng)
        T = unit_tangent(cj)
        frame = values(covariant_derivative(T, T))
        Tc = [cj.xj.diff(), cj.yj.diff(), cj.zj.diff()]
        coord = np.array([c.value for c in coord_nabla(cj, Tc)])
        ez = math.exp(cj.point[2])
        assert np.allclose(frame, (coord[0] * ez, coord[1] / ez, coord[2]), atol=1e-12)


def test_iterated_covariant_examples(helix):
    for k in (1, 2, 3):
        assert np.allclose(iterated_covariant(vertical_line(), 0.5, k), 0.0)
    for s in (-3.0, 0.0, 2.0):
        assert np.linalg.norm(iterated_covariant(helix, s, 1)) == pytest.approx(0.5, abs=1e-13)
    assert np.dot(*(2 * [iterated_covariant(helix, 0.4, 2)])) == pytest.approx(1 / 8, abs=1e-13)


def test_geodesic_curvature_examples(helix):
    assert geodesic_curvature_sq(eval_curve(vertical_line(), 0.0)).value == 0.0
    for s in (-5.0, 0.0, 3.3):
        assert geodesic_curvature_sq(eval_curve(helix, s)).value == pytest.approx(0.25, abs=1e-13)
    k2 = geodesic_curvature_sq(eval_curve(constant_z_curve(math.pi / 6), 0.0)).value
    assert k2 == pytest.approx(0.25, abs=1e-14)


def test_torsion_examples(helix):
    for s in (-5.0, 0.0, 3.3):
        assert torsion(eval_curve(helix, s)).value == pytest.approx(0.5, abs=1e-12)
    t = torsion(eval_curve(constant_z_curve(math.pi / 6), 0.0)).value
    assert t == pytest.approx(math.sqrt(3) / 2, abs=1e-13)
    mirrored = transform_curve(IsometrySpec("reflect_x"), helix)
    assert torsion(eval_curve(mirrored, 0.7)).value == pytest.approx(-0.5, abs=1e-12)
    assert frenet_frame(eval_curve(mirrored, 0.7)).tau_frame.value == pytest.approx(-0.5, abs=1e-12)
    with pytest.raises(TorsionUndefined):
        torsion(eval_curve(vertical_line(), 0.0))


def test_frenet_frame_on_helix(helix):
    for s in np.linspace(-5, 5, 11):
        cj = eval_curve(helix, s)
        f = frenet_frame(cj)
        M = f.frame_matrix()
        assert np.allclose(M @ M.T, np.eye(3), atol=1e-10)
        T3, N3, B3 = vertical_components(f, cj)
        assert abs(N3) <= 1e-12
        assert T3 == pytest.approx(1 / SQRT2, abs=1e-13)
        assert B3**2 == pytest.approx(0.5, abs=1e-12)
        assert T3**2 + N3**2 + B3**2 == pytest.approx(1.0, abs=1e-10)


def test_frenet_orientation_on_helix(helix):
    # B = T x N fixes B3 = -1/sqrt2 on the reference helix
    f = frenet_frame(eval_curve(helix, 0.0))
    assert np.allclose(f.frame_matrix(), [[0.5, 0.5, 1 / SQRT2], [1 / SQRT2, -1 / SQRT2, 0],
                                          [0.5, 0.5, -1 / SQRT2]], atol=1e-14)


def test_vertical_components_constant_z():
    f = frenet_frame(eval_curve(constant_z_curve(0.3), 0.0))
    assert vertical_components(f)[0] == 0.0


def test_geodesic_has_no_frame():
    with pytest.raises(GeodesicDegeneracy):
        frenet_frame(eval_curve(vertical_line(), 0.0))


def test_transform_examples(helix):
    out = transform_curve(IsometrySpec("translate_x", 2.5), helix)
    assert out.x.const == helix.x.const + 2.5
    c = 0.7
    out = transform_curve(IsometrySpec("flow_z", c), helix)
    assert out.x.exp[0][0] == pytest.approx(helix.x.exp[0][0] * math.exp(-c))
    assert out.y.exp[0][0] == pytest.approx(helix.y.exp[0][0] * math.exp(c))
    assert out.z.const == pytest.approx(c)
    mirrored = transform_curve(IsometrySpec("reflect_x"), helix)
    f = frenet_frame(eval_curve(mirrored, 0.0))
    assert f.kappa.value == pytest.approx(0.5) and f.tau.value == pytest.approx(-0.5)


@pytest.mark.parametrize("kind", ISOMETRY_KINDS)
def test_transform_matches_pointwise_isometry(kind, rng):
    iso = IsometrySpec(kind, 0.83)
    spec = random_unit_speed_spec(rng)
    image = transform_curve(iso, spec)
    for s in (-1.0, 0.0, 1.5):
        assert np.allclose(image.point(s), apply_isometry(iso, spec.point(s)), atol=1e-12)


def test_kappa_squared_equivalence_random(rng):
    for _ in range(50):
        cj = random_tangent_curve_jet(rng)
        T = unit_tangent(cj)
        dT = values(covariant_derivative(T, T))
        assert geodesic_curvature_sq(cj).value == pytest.approx(float(dT @ dT), abs=1e-9)
        f = frenet_frame(cj)
        assert f.tau.value == pytest.approx(f.tau_frame.value, abs=1e-9)


def test_random_specs_are_unit_speed(rng):
    for _ in range(30):
        spec = random_unit_speed_spec(rng)
        for s in (-2.0, 0.0, 2.0):
            assert speed_deviation(eval_curve(spec, s)) <= 1e-12


finite = st.floats(-5, 5, allow_nan=False)
coord = st.builds(CoordSpec, finite, finite,
                  st.lists(st.tuples(finite, finite), max_size=3).map(tuple))


@settings(max_examples=50)
@given(coord, coord, st.builds(CoordSpec, finite, finite))
def test_json_round_trip(x, y, z):
    spec = CurveSpec(x, y, z)
    assert CurveSpec.from_json(json.loads(json.dumps(spec.to_json()))) == spec


def test_spec_validation():
    with pytest.raises(ValueError):
        CurveSpec(z=CoordSpec(exp=((1.0, 1.0),)))
    with pytest.raises(ValueError):
        CoordSpec(exp=tuple((1.0, 1.0) for _ in range(9)))
    with pytest.raises(ValueError):
        CoordSpec(const=float("nan"))
    with pytest.raises(ValueError):
        CurveSpec.from_json({"x": {}, "y": {}})
    with pytest.raises(ValueError):
        CoordSpec.from_json({"const": 1, "quadratic": 2})
