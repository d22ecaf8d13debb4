"""Coordinate-basis route to covariant derivatives and tension, for cross-checks.

Works from the metric diag(e^{2z}, e^{-2z}, 1) alone: Christoffel symbols,
their z-derivatives and the Riemann tensor are written out by hand here and
never read from the library's frame tables.
"""
import math

import numpy as np

from sol_curves.geometry import frame_from_coords


def christoffel(z):
    """G[l, i, j] = Gamma^l_{ij} in coordinates (x, y, z)."""
    G = np.zeros((3, 3, 3))
    G[0, 0, 2] = G[0, 2, 0] = 1.0
    G[1, 1, 2] = G[1, 2, 1] = -1.0
    G[2, 0, 0] = -math.exp(2 * z)
    G[2, 1, 1] = math.exp(-2 * z)
    return G


def christoffel_dz(z):
    dG = np.zeros((3, 3, 3))
    dG[2, 0, 0] = -2 * math.exp(2 * z)
    dG[2, 1, 1] = -2 * math.exp(-2 * z)
    return dG


def riemann(z):
    """Rm[l, k, i, j] with R(d_i, d_j) d_k = Rm[l, k, i, j] d_l."""
    G, dG = christoffel(z), christoffel_dz(z)
    d = np.zeros((3, 3, 3, 3))  # d[i, l, j, k] = d_i Gamma^l_{jk}
    d[2] = dG
    Rm = np.zeros((3, 3, 3, 3))
    for l in range(3):
        for k in range(3):
            for i in range(3):
                for j in range(3):
                    Rm[l, k, i, j] = (d[i, l, j, k] - d[j, l, i, k]
                                      + G[l, i, :] @ G[:, j, k] - G[l, j, :] @ G[:, i, k])
    return Rm


def coord_curvature(p, X, Y, Z):
    return np.einsum("lkij,i,j,k->l", riemann(p[2]), X, Y, Z)


def _gamma_jets(zj):
    e2 = (zj * 2.0).exp()
    em2 = 1.0 / e2
    one = zj * 0.0 + 1.0
    zero = zj * 0.0
    G = [[[zero] * 3 for _ in range(3)] for _ in range(3)]
    G[0][0][2] = G[0][2][0] = one
    G[1][1][2] = G[1][2][1] = -one
    G[2][0][0] = -e2
    G[2][1][1] = em2
    return G


def coord_nabla(cj, V):
    """Coordinate components of nabla_{gamma'} V along the curve jet ``cj``."""
    G = _gamma_jets(cj.zj)
    xd = (cj.xj.diff(), cj.yj.diff(), cj.zj.diff())
    out = []
    for k in range(3):
        acc = V[k].diff()
        for i in range(3):
            for j in range(3):
                acc = acc + G[k][i][j] * xd[i] * V[j]
        out.append(acc)
    return out


def coord_tension(cj, r):
    """r-tension of a unit-speed curve jet, returned in frame components."""
    T = [cj.xj.diff(), cj.yj.diff(), cj.zj.diff()]
    D = [T]
    for _ in range(2 * r - 1):
        D.append(coord_nabla(cj, D[-1]))
    vals = [np.array([c.value for c in v]) for v in D]
    p = cj.point
    out = vals[2 * r - 1].copy()
    for l in range(r - 1):
        out += (-1) ** l * coord_curvature(p, vals[2 * r - 3 - l], vals[l], vals[0])
    return frame_from_coords(p, out)
