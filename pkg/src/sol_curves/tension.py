"""r-harmonic tension fields of curves in Sol.

The order-r tension of an arc-length curve is

    nabla^{2r-1} T + sum_{l=0}^{r-2} (-1)^l R(nabla^{2r-3-l} T, nabla^l T) T,

with nabla^k T the k-th covariant derivative of T along the curve.  Two
routes are provided for r = 3: the direct evaluation above in the E-frame,
and the closed-form Frenet components (res_T, res_N, res_B) in terms of
kappa, tau, their derivatives and the vertical components T3, N3, B3.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import jet_order
from .curves import (
    CurveJet,
    CurveSpec,
    FrenetData,
    eval_curve,
    frenet_frame,
    nabla_powers,
    unit_tangent,
    values,
)
from .errors import FrameInconsistency, OrderExhausted
from .geometry import curvature_4tensor, curvature_operator

SUPPORTED_R = (2, 3, 4)
IDENTITY_TOL = 1e-10


@dataclass
class TensionResidual:
    frame_vec: np.ndarray
    frenet_vec: tuple[float, float, float] | None
    r: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.frame_vec))


def tension_field(cj: CurveJet, r: int) -> np.ndarray:
    """Order-r tension at the base point of ``cj`` (E-frame components)."""
    if r not in SUPPORTED_R:
        raise ValueError(f"r must be one of {SUPPORTED_R}, got {r}")
    if cj.order < 2 * r:
        raise OrderExhausted(f"r={r} needs coordinate jets of order >= {2 * r}, got {cj.order}")
    T = unit_tangent(cj)
    D = [values(v) for v in nabla_powers(T, 2 * r - 1)]
    out = D[2 * r - 1].copy()
    for l in range(r - 1):
        out += (-1) ** l * curvature_operator(D[2 * r - 3 - l], D[l], D[0])
    return out


def r_tension(spec: CurveSpec, s: float, r: int, order: int | None = None) -> np.ndarray:
    if order is None:
        order = max(jet_order(), 2 * r + 2)
    return tension_field(eval_curve(spec, s, order), r)


def triharmonic_direct(cj: CurveJet) -> np.ndarray:
    if cj.order < 6:
        raise OrderExhausted(f"triharmonic residual needs jet order >= 6, got {cj.order}")
    T = unit_tangent(cj)
    T0, T1, T2, T3, _, T5 = (values(v) for v in nabla_powers(T, 5))
    return T5 + curvature_operator(T3, T0, T0) - curvature_operator(T2, T1, T0)


def triharmonic_residual_direct(spec: CurveSpec, s: float, order: int | None = None) -> np.ndarray:
    return triharmonic_direct(eval_curve(spec, s, jet_order() if order is None else order))


def frenet_components(f: FrenetData):
    """(res_T, res_N, res_B) of the triharmonic tension from kappa, tau jets and the frame."""
    if f.kappa.order < 4 or f.tau.order < 3:
        raise OrderExhausted("Frenet residual needs kappa to order 4 and tau to order 3")
    k, k1, k2, k3, k4 = f.kappa.derivatives()[:5]
    t, t1, t2, t3 = f.tau.derivatives()[:4]
    T3, N3, B3 = f.T[2].value, f.N[2].value, f.B[2].value

    res_T = 5 * (2 * k**3 * k1 + k * (t**2 * k1 - k3) - 2 * k1 * k2 + k**2 * t * t1)
    res_N = (
        -2 * k**2 * (B3 * T3 * t + 5 * k2)
        + k * (-2 * B3 * N3 * t1 - 15 * k1**2 + (1 - 2 * B3**2) * t**2 - 4 * t * t2
               - 3 * t1**2 + t**4)
        - 4 * t * k1 * (B3 * N3 + 3 * t1)
        + k4
        - 2 * k2 * (1 - B3**2 + 3 * t**2)
        + k2
        + 2 * k**3 * (1 - 2 * B3**2 + t**2)
        + k**5
    )
    res_B = (
        -2 * k2 * (B3 * N3 - 3 * t1)
        + k * (2 * t**2 * (B3 * N3 - 3 * t1) + (2 * N3**2 - 1) * t1 + t3)
        + k**3 * (4 * B3 * N3 - t1)
        + k**2 * t * (2 * N3 * T3 - 9 * k1)
        + 4 * k1 * t2
        - 4 * t**3 * k1
        + 2 * t * (2 * k3 + (2 * N3**2 - 1) * k1)
    )
    return float(res_T), float(res_N), float(res_B)


def triharmonic_residual_frenet(spec: CurveSpec, s: float, order: int | None = None):
    return frenet_components(frenet_frame(eval_curve(spec, s, jet_order() if order is None else order)))


def frenet_to_frame(f: FrenetData, comps) -> np.ndarray:
    """E-frame vector with Frenet components ``comps`` = (along T, N, B)."""
    return np.asarray(comps, float) @ f.frame_matrix()


def tension_residual(spec: CurveSpec, s: float, order: int | None = None) -> TensionResidual:
    """Triharmonic residual at gamma(s) by both routes."""
    cj = eval_curve(spec, s, jet_order() if order is None else order)
    return TensionResidual(triharmonic_direct(cj), frenet_components(frenet_frame(cj)), 3)


def frenet_curvature_identities(f: FrenetData, tol: float = IDENTITY_TOL):
    """R(T,N,T,N), R(T,N,T,B), R(B,T,B,T), R(B,N,N,T), R(B,N,B,T) via T3, N3, B3.

    Each value is checked against the curvature tensor applied to the actual
    frame vectors.
    """
    T, N, B = f.frame_matrix()
    T3, N3, B3 = T[2], N[2], B[2]
    closed = (
        -1 + 2 * B3**2,
        -2 * N3 * B3,
        -1 + 2 * N3**2,
        2 * T3 * B3,
        -2 * T3 * N3,
    )
    direct = (
        curvature_4tensor(T, N, T, N),
        curvature_4tensor(T, N, T, B),
        curvature_4tensor(B, T, B, T),
        curvature_4tensor(B, N, N, T),
        curvature_4tensor(B, N, B, T),
    )
    gap = max(abs(a - b) for a, b in zip(closed, direct))
    if gap > tol:
        raise FrameInconsistency(f"curvature identities off by {gap:.3e}")
    return tuple(float(v) for v in closed)


def nabla_rows_frenet(kd, td, k: int):
    """Frenet components of nabla_T^k T for k in {1, 2, 3, 5}.

    ``kd`` = (kappa, kappa', ..., kappa'''') and ``td`` = (tau, ..., tau''');
    shorter sequences are padded with zeros.
    """
    kd = list(kd) + [0.0] * (5 - len(kd))
    td = list(td) + [0.0] * (4 - len(td))
    K, K1, K2, K3, K4 = kd
    t, t1, t2, t3 = td
    if k == 1:
        return (0.0, K, 0.0)
    if k == 2:
        return (-K**2, K1, K * t)
    if k == 3:
        return (-3 * K * K1, -K**3 - K * t**2 + K2, 2 * K1 * t + K * t1)
    if k == 5:
        return (
            5 * (2 * K**3 * K1 + K * (t**2 * K1 - K3) - 2 * K1 * K2 + K**2 * t * t1),
            K4 - 6 * t**2 * K2 - 10 * K**2 * K2 - 12 * t * K1 * t1
            + K * (t**4 - 3 * (5 * K1**2 + t1**2) - 4 * t * t2) + 2 * K**3 * t**2 + K**5,
            4 * K3 * t + 6 * K2 * t1 + 4 * K1 * t2 - 9 * K**2 * t * K1 - 4 * t**3 * K1
            - K**3 * t1 + K * (t3 - 6 * t**2 * t1),
        )
    raise ValueError(f"k must be 1, 2, 3 or 5, got {k}")


def nabla_powers_frenet(a: float, b: float, k: int):
    """Frenet components of nabla_T^k T for constant kappa = a > 0 and tau = b."""
    if a <= 0:
        raise ValueError("kappa must be positive")
    return tuple(float(v) for v in nabla_rows_frenet((a,), (b,), k))
