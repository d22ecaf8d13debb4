"""Sol = (R^3, e^{2z}dx^2 + e^{-2z}dy^2 + dz^2).

Tangent vectors are handled through their components in the global
orthonormal frame

    E1 = e^{-z} d/dx,   E2 = e^{z} d/dy,   E3 = d/dz,

stored as length-3 numpy arrays.  Because the frame is orthonormal the
Euclidean dot product of component arrays is the Riemannian inner product.

Curvature convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z
- nabla_[X,Y] Z and R(X,Y,Z,W) = <R(X,Y)W, Z>.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

__all__ = [
    "Point3",
    "IsometrySpec",
    "ISOMETRY_KINDS",
    "KILLING_IDS",
    "CONNECTION",
    "BRACKETS",
    "CURVATURE",
    "metric_components",
    "frame_connection",
    "frame_bracket",
    "curvature_operator",
    "curvature_4tensor",
    "apply_isometry",
    "apply_isometries",
    "killing_field",
    "frame_from_coords",
    "coords_from_frame",
    "inner",
    "cross",
]


class Point3(NamedTuple):
    x: float
    y: float
    z: float


def metric_components(p) -> tuple[float, float, float]:
    """Diagonal coefficients (g_xx, g_yy, g_zz) of the metric at ``p``."""
    z = p[2]
    return math.exp(2.0 * z), math.exp(-2.0 * z), 1.0


def frame_from_coords(p, u) -> np.ndarray:
    """Frame components of the coordinate vector u = u^x d/dx + u^y d/dy + u^z d/dz at p."""
    ez = math.exp(p[2])
    return np.array([ez * u[0], u[1] / ez, u[2]], dtype=float)


def coords_from_frame(p, v) -> np.ndarray:
    ez = math.exp(p[2])
    return np.array([v[0] / ez, v[1] * ez, v[2]], dtype=float)


def inner(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def cross(u, v):
    """Frame cross product with orientation (E1, E2, E3); works on floats or jets."""
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


# nabla_{E_i} E_j, 1-based keys; missing entries are zero.
CONNECTION = {
    (1, 1): (0, 0, -1),
    (1, 3): (1, 0, 0),
    (2, 2): (0, 0, 1),
    (2, 3): (0, -1, 0),
}

# [E_i, E_j] for i < j.
BRACKETS = {
    (1, 2): (0, 0, 0),
    (1, 3): (1, 0, 0),
    (2, 3): (0, -1, 0),
}

# R(E_i, E_j) E_k for i < j; missing entries are zero.
_CURVATURE_TABLE = {
    (1, 2, 1): (0, -1, 0),
    (1, 3, 1): (0, 0, 1),
    (1, 2, 2): (1, 0, 0),
    (2, 3, 2): (0, 0, 1),
    (1, 3, 3): (-1, 0, 0),
    (2, 3, 3): (0, -1, 0),
}


def _build_curvature() -> np.ndarray:
    # CURVATURE[i, j, k, l] = l-th component of R(E_i, E_j) E_k (0-based)
    R = np.zeros((3, 3, 3, 3))
    for (i, j, k), vec in _CURVATURE_TABLE.items():
        R[i - 1, j - 1, k - 1] = vec
        R[j - 1, i - 1, k - 1] = -np.asarray(vec)
    R.setflags(write=False)
    return R


CURVATURE = _build_curvature()


def frame_connection(i: int, j: int) -> np.ndarray:
    if i not in (1, 2, 3) or j not in (1, 2, 3):
        raise ValueError(f"frame indices must be 1, 2 or 3, got ({i}, {j})")
    return np.array(CONNECTION.get((i, j), (0, 0, 0)), dtype=float)


def frame_bracket(i: int, j: int) -> np.ndarray:
    if i == j:
        return np.zeros(3)
    if i < j:
        return np.array(BRACKETS[(i, j)], dtype=float)
    return -np.array(BRACKETS[(j, i)], dtype=float)


def curvature_operator(X, Y, Z) -> np.ndarray:
    """R(X, Y) Z for frame-component vectors."""
    return np.einsum("i,j,k,ijkl->l", np.asarray(X, float), np.asarray(Y, float),
                     np.asarray(Z, float), CURVATURE)


def curvature_4tensor(X, Y, Z, W) -> float:
    """R(X, Y, Z, W) = <R(X, Y) W, Z>."""
    return float(np.dot(curvature_operator(X, Y, W), np.asarray(Z, float)))


ISOMETRY_KINDS = ("translate_x", "translate_y", "flow_z", "reflect_x", "reflect_y")


@dataclass(frozen=True)
class IsometrySpec:
    """One of the five isometry generators; ``c`` is ignored by reflections."""

    kind: str
    c: float = 0.0

    def __post_init__(self):
        if self.kind not in ISOMETRY_KINDS:
            raise ValueError(f"unknown isometry kind {self.kind!r}")

    @property
    def preserves_orientation(self) -> bool:
        return not self.kind.startswith("reflect")


def apply_isometry(iso: IsometrySpec, p) -> Point3:
    x, y, z = p
    c = iso.c
    if iso.kind == "translate_x":
        return Point3(x + c, y, z)
    if iso.kind == "translate_y":
        return Point3(x, y + c, z)
    if iso.kind == "flow_z":
        return Point3(math.exp(-c) * x, math.exp(c) * y, z + c)
    if iso.kind == "reflect_x":
        return Point3(-x, y, z)
    return Point3(x, -y, z)


def apply_isometries(isos: Iterable[IsometrySpec], p) -> Point3:
    """Apply a composition of generators, left to right."""
    q = Point3(*p)
    for iso in isos:
        q = apply_isometry(iso, q)
    return q


KILLING_IDS = ("V1", "V2", "V3")


def killing_field(field_id: str, p) -> np.ndarray:
    """Frame components of the Killing field V1, V2 or V3 at ``p``.

    V1 = e^z E1 (= d/dx), V2 = e^{-z} E2 (= d/dy) and
    V3 = -x e^z E1 + y e^{-z} E2 + E3, the generator of the flow_z family.
    """
    x, y, z = p
    if field_id == "V1":
        return np.array([math.exp(z), 0.0, 0.0])
    if field_id == "V2":
        return np.array([0.0, math.exp(-z), 0.0])
    if field_id == "V3":
        return np.array([-x * math.exp(z), y * math.exp(-z), 1.0])
    raise ValueError(f"unknown Killing field {field_id!r}")
