"""Random unit-speed curves for property tests and two-route cross-checks."""
from __future__ import annotations

import math

import numpy as np

from .config import jet_order
from .curves import CoordSpec, CurveJet, CurveSpec, eval_curve, integrate_tangent_jet
from .jets import jet_constant, jet_variable

KAPPA_FLOOR = 1e-3


def _kappa_helix(T1, T2, T3):
    # |nabla_T T| for constant frame components
    return math.sqrt((T1 * T1 + T2 * T2) * T3 * T3 + (T2 * T2 - T1 * T1) ** 2)


def random_unit_speed_spec(rng: np.random.Generator) -> CurveSpec:
    """Closed-form unit-speed curve with constant frame components of T.

    z = z0 + m s, x = cx + A e^{-m s}, y = cy + C e^{m s} (linear when m = 0).
    Nearly geodesic draws are rejected.
    """
    while True:
        m = float(rng.uniform(-0.95, 0.95))
        if rng.random() < 0.1:
            m = 0.0
        phi = float(rng.uniform(0.0, 2 * math.pi))
        w = math.sqrt(1 - m * m)
        T1, T2 = w * math.cos(phi), w * math.sin(phi)
        if _kappa_helix(T1, T2, m) < KAPPA_FLOOR or (m != 0.0 and abs(m) < 1e-3):
            continue
        z0, cx, cy = (float(v) for v in rng.uniform(-1.0, 1.0, 3))
        if m == 0.0:
            x = CoordSpec(cx, T1 * math.exp(-z0))
            y = CoordSpec(cy, T2 * math.exp(z0))
        else:
            x = CoordSpec(cx, 0.0, ((-T1 * math.exp(-z0) / m, -m),))
            y = CoordSpec(cy, 0.0, ((T2 * math.exp(z0) / m, m),))
        return CurveSpec(x, y, CoordSpec(z0, m))


def random_tangent_curve_jet(rng: np.random.Generator, order: int | None = None) -> CurveJet:
    """Unit-speed curve jet whose tangent angles are random quadratics in s.

    T = (cos t cos p, cos t sin p, sin t) in the E-frame, so kappa and tau
    vary along the curve.
    """
    order = jet_order() if order is None else order
    s = jet_variable(0.0, order - 1)
    c = rng.uniform(-1.0, 1.0, 6)
    theta = jet_constant(float(c[0]), order - 1) + s * float(c[1]) + s * s * float(c[2])
    phi = jet_constant(float(rng.uniform(0, 2 * math.pi)), order - 1) + s * float(c[3]) \
        + s * s * float(c[4])
    ct = theta.cos()
    T = (ct * phi.cos(), ct * phi.sin(), theta.sin())
    return integrate_tangent_jet(T, tuple(float(v) for v in rng.uniform(-1.0, 1.0, 3)))


def random_spec_jet(rng: np.random.Generator, order: int | None = None) -> CurveJet:
    spec = random_unit_speed_spec(rng)
    return eval_curve(spec, float(rng.uniform(-2.0, 2.0)), order)
