"""Curves in Sol: closed-form specs, jets along curves, Frenet data.

Vector fields along a curve are "vector jets": 3-tuples of :class:`Jet`
holding the E-frame components as Taylor series in the curve parameter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .config import jet_order
from .errors import (
    FrameInconsistency,
    GeodesicDegeneracy,
    NotUnitSpeed,
    OrderExhausted,
    TorsionUndefined,
)
from .geometry import IsometrySpec, Point3, cross, inner
from .jets import Jet, jet_constant

GEODESIC_THRESHOLD = 1e-8
UNIT_SPEED_TOL = 1e-8
TAU_AGREEMENT_TOL = 1e-6
MAX_EXP_TERMS = 8


@dataclass(frozen=True)
class CoordSpec:
    """coordinate(s) = const + linear*s + sum(amp * exp(rate*s))."""

    const: float = 0.0
    linear: float = 0.0
    exp: tuple[tuple[float, float], ...] = ()

    def __post_init__(self):
        terms = tuple((float(a), float(r)) for a, r in self.exp)
        object.__setattr__(self, "exp", terms)
        object.__setattr__(self, "const", float(self.const))
        object.__setattr__(self, "linear", float(self.linear))
        if len(terms) > MAX_EXP_TERMS:
            raise ValueError(f"at most {MAX_EXP_TERMS} exponential terms are supported")
        values = [self.const, self.linear, *(v for t in terms for v in t)]
        if not all(math.isfinite(v) for v in values):
            raise ValueError("curve coefficients must be finite")

    def __call__(self, s: float) -> float:
        return self.const + self.linear * s + sum(a * math.exp(r * s) for a, r in self.exp)

    def jet(self, s: float, order: int) -> Jet:
        c = np.zeros(order + 1)
        c[0] = self.const + self.linear * s
        if order >= 1:
            c[1] = self.linear
        k = np.arange(order + 1)
        fact = np.array([math.factorial(int(n)) for n in k], dtype=float)
        for a, r in self.exp:
            c += a * math.exp(r * s) * r**k / fact
        return Jet(c)

    def scaled(self, factor: float) -> "CoordSpec":
        return CoordSpec(self.const * factor, self.linear * factor,
                         tuple((a * factor, r) for a, r in self.exp))

    def to_json(self, with_exp: bool = True) -> dict:
        out = {"const": self.const, "linear": self.linear}
        if with_exp:
            out["exp"] = [[a, r] for a, r in self.exp]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CoordSpec":
        unknown = set(obj) - {"const", "linear", "exp"}
        if unknown:
            raise ValueError(f"unknown coordinate keys: {sorted(unknown)}")
        terms = obj.get("exp", [])
        if any(len(t) != 2 for t in terms):
            raise ValueError("each exp term must be [amplitude, rate]")
        return cls(float(obj.get("const", 0.0)), float(obj.get("linear", 0.0)),
                   tuple((float(a), float(r)) for a, r in terms))


@dataclass(frozen=True)
class CurveSpec:
    x: CoordSpec = field(default_factory=CoordSpec)
    y: CoordSpec = field(default_factory=CoordSpec)
    z: CoordSpec = field(default_factory=CoordSpec)

    def __post_init__(self):
        if self.z.exp:
            raise ValueError("the z coordinate must be const + linear*s")

    def point(self, s: float) -> Point3:
        return Point3(self.x(s), self.y(s), self.z(s))

    def to_json(self) -> dict:
        return {"x": self.x.to_json(), "y": self.y.to_json(), "z": self.z.to_json(with_exp=False)}

    @classmethod
    def from_json(cls, obj: dict) -> "CurveSpec":
        missing = {"x", "y", "z"} - set(obj)
        if missing:
            raise ValueError(f"curve JSON is missing {sorted(missing)}")
        return cls(CoordSpec.from_json(obj["x"]), CoordSpec.from_json(obj["y"]),
                   CoordSpec.from_json(obj["z"]))


def vertical_line() -> CurveSpec:
    """The geodesic s -> (0, 0, s)."""
    return CurveSpec(z=CoordSpec(linear=1.0))


class CurveJet(NamedTuple):
    xj: Jet
    yj: Jet
    zj: Jet

    @property
    def order(self) -> int:
        return min(self.xj.order, self.yj.order, self.zj.order)

    @property
    def point(self) -> Point3:
        return Point3(self.xj.value, self.yj.value, self.zj.value)


def eval_curve(spec: CurveSpec, s: float, order: int | None = None) -> CurveJet:
    order = jet_order() if order is None else order
    if order < 1:
        raise ValueError("curve jets need order >= 1")
    return CurveJet(spec.x.jet(s, order), spec.y.jet(s, order), spec.z.jet(s, order))


def values(vj) -> np.ndarray:
    """Base-point value of a vector jet."""
    return np.array([c.value for c in vj])


def _tangent_jets(cj: CurveJet):
    ez = cj.zj.exp()
    return (cj.xj.diff() * ez, cj.yj.diff() / ez, cj.zj.diff())


def speed_deviation(cj: CurveJet) -> float:
    """| |gamma'|^2 - 1 | at the base point."""
    T = _tangent_jets(cj)
    return abs(float(inner(values(T), values(T))) - 1.0)


def unit_tangent(cj: CurveJet, check: bool = True):
    """T = x' e^z E1 + y' e^{-z} E2 + z' E3 as a vector jet (one order lower)."""
    T = _tangent_jets(cj)
    if check:
        dev = abs(float(inner(values(T), values(T))) - 1.0)
        if dev > UNIT_SPEED_TOL:
            raise NotUnitSpeed(f"curve speed deviates from 1 by {dev:.3e}")
    return T


def covariant_derivative(T, V):
    """nabla_T V along the curve, in frame components.

    (V1' + T1 V3, V2' - T2 V3, V3' - T1 V1 + T2 V2); the result is one order
    lower than V.
    """
    if min(c.order for c in V) == 0:
        raise OrderExhausted("vector jet has no derivative slot left")
    T1, T2, _ = T
    V1, V2, V3 = V
    return (
        V1.diff() + T1 * V3,
        V2.diff() - T2 * V3,
        V3.diff() - T1 * V1 + T2 * V2,
    )


def nabla_powers(T, k: int) -> list:
    """[T, nabla_T T, ..., nabla_T^k T] as vector jets."""
    out = [T]
    for _ in range(k):
        out.append(covariant_derivative(T, out[-1]))
    return out


def iterated_covariant(spec: CurveSpec, s: float, k: int, order: int | None = None) -> np.ndarray:
    """nabla_T^k T at gamma(s)."""
    order = max(jet_order(), k + 2) if order is None else order
    if k < 1 or k > order - 1:
        raise OrderExhausted(f"k={k} needs 1 <= k <= {order - 1}")
    T = unit_tangent(eval_curve(spec, s, order))
    return values(nabla_powers(T, k)[-1])


def geodesic_curvature_sq(cj: CurveJet) -> Jet:
    """kappa^2 from the explicit coordinate formula (order drops by 2)."""
    x1, y1, z1 = cj.xj.diff(), cj.yj.diff(), cj.zj.diff()
    x2, y2, z2 = x1.diff(), y1.diff(), z1.diff()
    e2z = (cj.zj * 2.0).exp()
    em2z = 1.0 / e2z
    return (
        e2z * (x2 + 2.0 * x1 * z1) ** 2
        + em2z * (y2 - 2.0 * y1 * z1) ** 2
        + (z2 - e2z * x1**2 + em2z * y1**2) ** 2
    )


def _torsion_parts(cj: CurveJet):
    x1, y1, z1 = cj.xj.diff(), cj.yj.diff(), cj.zj.diff()
    x2, y2, z2 = x1.diff(), y1.diff(), z1.diff()
    x3, y3, z3 = x2.diff(), y2.diff(), z2.diff()
    e2 = (cj.zj * 2.0).exp()
    e4 = e2 * e2
    e6 = e4 * e2
    e8 = e4 * e4
    A = (
        2.0 * e8 * x1**5 * y1
        + 2.0 * x1 * y1**5
        + e6 * x1 * (
            3.0 * x2**2 * y1
            + x1**2 * (y3 - 6.0 * y2 * z1 + 8.0 * y1 * (2.0 * z1**2 - z2))
            + x1 * (y1 * (14.0 * x2 * z1 - x3) - 3.0 * x2 * y2)
        )
        + e2 * y1 * (
            x1 * (3.0 * y2**2 + 8.0 * y1**2 * (z2 + 2.0 * z1**2) - y1 * (y3 + 14.0 * y2 * z1))
            + y1 * (y1 * (x3 + 6.0 * x2 * z1) - 3.0 * x2 * y2)
        )
        + e4 * (
            -4.0 * x1**3 * y1**3
            + x1 * (
                -y3 * z2 + 2.0 * y3 * z1**2 + z3 * y2 - 8.0 * y2 * z1**3
                + y1 * (6.0 * z2**2 + 8.0 * z1**4 - 4.0 * z3 * z1)
            )
            + y1 * (x3 * z2 + 2.0 * x3 * z1**2 - z3 * x2 + 8.0 * x2 * z1**3)
            + z1 * (y3 * x2 - y2 * (x3 + 6.0 * x2 * z1))
        )
    )
    B = (
        e4 * (z2**2 - 2.0 * x1**2 * y1**2)
        + e8 * x1**4
        + e6 * ((x2 + 2.0 * x1 * z1) ** 2 - 2.0 * x1**2 * z2)
        + y1**4
        + e2 * (2.0 * y1**2 * z2 + (y2 - 2.0 * y1 * z1) ** 2)
    )
    return A, B, e4


def torsion(cj: CurveJet) -> Jet:
    """tau = A / B from the explicit coordinate polynomials (order drops by 3)."""
    A, B, e4 = _torsion_parts(cj)
    # B = e^{4z} kappa^2 for unit-speed curves
    if abs(B.value) <= (GEODESIC_THRESHOLD**2) * e4.value:
        raise TorsionUndefined("torsion denominator vanishes (geodesic point)")
    return A / B


@dataclass
class FrenetData:
    """Frenet frame (vector jets), kappa and tau (jets) at one parameter value.

    ``tau`` comes from the explicit coordinate polynomial; ``tau_frame`` is
    -<nabla_T B, N> computed from the frame itself.
    """

    T: tuple
    N: tuple
    B: tuple
    kappa: Jet
    tau: Jet
    tau_frame: Jet

    def frame_matrix(self) -> np.ndarray:
        """Rows T, N, B at the base point."""
        return np.array([values(self.T), values(self.N), values(self.B)])


def frenet_frame(cj: CurveJet) -> FrenetData:
    T = unit_tangent(cj)
    dT = covariant_derivative(T, T)
    k2 = geodesic_curvature_sq(cj)
    if k2.value <= GEODESIC_THRESHOLD**2:
        raise GeodesicDegeneracy(f"kappa = {math.sqrt(max(k2.value, 0.0)):.3e} at base point")
    kappa = k2.sqrt()
    N = tuple(c / kappa for c in dT)
    B = cross(T, N)
    tau_frame = -inner(covariant_derivative(T, B), N)
    tau = torsion(cj)
    gap = abs(tau.value - tau_frame.value)
    if gap > TAU_AGREEMENT_TOL:
        raise FrameInconsistency(f"torsion formula and frame torsion differ by {gap:.3e}")
    return FrenetData(T, N, B, kappa, tau, tau_frame)


def vertical_components(f: FrenetData, cj: CurveJet | None = None, tol: float = 1e-8):
    """(T3, N3, B3) at the base point.

    With ``cj`` given, N3 and B3 are also recomputed from the coordinate
    expressions

        N3 = -(e^{2z} x'^2 - e^{-2z} y'^2 - z'') / kappa
        B3 = (-y' x'' + x' (y'' - 4 y' z')) / kappa

    and a mismatch beyond ``tol`` raises FrameInconsistency.
    """
    T3, N3, B3 = f.T[2].value, f.N[2].value, f.B[2].value
    if cj is not None:
        d = [c.derivatives() for c in cj]
        (x0, x1, x2), (y0, y1, y2), (z0, z1, z2) = (v[:3] for v in d)
        a = f.kappa.value
        n3 = -(math.exp(2 * z0) * x1**2 - math.exp(-2 * z0) * y1**2 - z2) / a
        b3 = (-y1 * x2 + x1 * (-4.0 * y1 * z1 + y2)) / a
        gap = max(abs(n3 - N3), abs(b3 - B3), abs(z1 - T3))
        if gap > tol:
            raise FrameInconsistency(f"vertical components disagree by {gap:.3e}")
    return T3, N3, B3


def transform_curve(iso, spec: CurveSpec) -> CurveSpec:
    """Image of ``spec`` under an isometry generator (or a list, applied left to right)."""
    if not isinstance(iso, IsometrySpec):
        for g in iso:
            spec = transform_curve(g, spec)
        return spec
    x, y, z = spec.x, spec.y, spec.z
    c = iso.c
    if iso.kind == "translate_x":
        x = CoordSpec(x.const + c, x.linear, x.exp)
    elif iso.kind == "translate_y":
        y = CoordSpec(y.const + c, y.linear, y.exp)
    elif iso.kind == "flow_z":
        x = x.scaled(math.exp(-c))
        y = y.scaled(math.exp(c))
        z = CoordSpec(z.const + c, z.linear)
    elif iso.kind == "reflect_x":
        x = x.scaled(-1.0)
    else:
        y = y.scaled(-1.0)
    return CurveSpec(x, y, z)


def integrate_tangent_jet(T, p0) -> CurveJet:
    """Coordinates of the curve through p0 whose frame-component tangent is T.

    Solves z' = T3, x' = T1 e^{-z}, y' = T2 e^{z} in Taylor series; the
    returned jets are one order higher than T.  Any unit vector jet T gives a
    unit-speed curve jet.
    """
    x0, y0, z0 = p0
    zj = T[2].integrate(z0)
    ez = zj.exp()
    xj = (T[0] / ez).integrate(x0)
    yj = (T[1] * ez).integrate(y0)
    return CurveJet(xj, yj, zj)


def constant_vector_jet(v, order: int):
    return tuple(jet_constant(float(c), order) for c in v)
