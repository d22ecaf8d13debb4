"""Triharmonic helices: the algebraic system, its classification, explicit curves.

For a helix (kappa = a, tau = b constant) with N3 = 0 the normal component of
the triharmonic tension reduces to

    a [a^4 - 2ab B3 T3 + 2a^2 (1 + b^2 - 2 B3^2) + b^2 (1 + b^2 - 2 B3^2)].

Every helix with N3 = 0 and constant T3 = c1 is, up to the translations, one
of the curves built by :func:`helix_family_curve`, with a^2 = c1^2 - c1^4 and
b = +-(1 - c1^2).  :func:`classify` scans c1 for roots of the residual.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .curves import (
    CoordSpec,
    CurveSpec,
    eval_curve,
    frenet_frame,
    speed_deviation,
    values,
    vertical_components,
)
from .errors import FrameDrift, InvalidParams, NoRootsFound
from .geometry import IsometrySpec, Point3
from .tension import r_tension, tension_residual, frenet_to_frame

C1_ROOT = 1.0 / math.sqrt(2.0)

NEWTON_H = 1e-7
NEWTON_TOL = 1e-12
NEWTON_MAXITER = 50
DEDUPE_TOL = 1e-6
ROOT_RESIDUAL_TOL = 1e-10


# -- algebraic system -----------------------------------------------------

def helix_algebraic_residuals(a: float, b: float, B3: float, T3: float) -> tuple[float, float]:
    """Normal residual of a helix, and the factor 2a^2 B3 + b^2 B3 + ab T3.

    The second value is what must vanish for the binormal equation to hold at
    points where N3 != 0.
    """
    q = 1 + b * b - 2 * B3 * B3
    first = a * (a**4 - 2 * a * b * B3 * T3 + 2 * a * a * q + b * b * q)
    second = 2 * a * a * B3 + b * b * B3 + a * b * T3
    return first, second


def reduced_quartic_constraint(a: float, b: float, B3: float) -> float:
    """4a^2 b^2 B3^2 (B3^2 - 1) + (a^4 + (2a^2 + b^2)(1 + b^2 - 2 B3^2))^2.

    Vanishes iff the normal residual vanishes for T3 = +sqrt(1 - B3^2) or for
    T3 = -sqrt(1 - B3^2).  Accepts numpy arrays.
    """
    q = 1 + b * b - 2 * B3 * B3
    p = a**4 + 2 * a * a * q + b * b * q
    return 4 * a * a * b * b * B3 * B3 * (B3 * B3 - 1) + p * p


def helix_relations(c1: float, z_branch: int = 1) -> tuple[float, float]:
    """(a, b) of the helix with T3 = c1 on the given z-branch."""
    u = c1 * c1
    a = math.sqrt(u - u * u)
    b = (1 - u) if z_branch == 1 else -(1 - u)
    return a, float(b)


# -- explicit curves -------------------------------------------------------

def helix_family_curve(c1: float, c2: float = 1.0, cx: float = 0.0, cy: float = 0.0,
                       x_branch: int = 1, z_branch: int = 1) -> CurveSpec:
    """Unit-speed helix with z = (1/2) log(c2 e^{2 c1 s}).

    x_branch 1 / -1 picks the two integrations of the unit-speed condition,
    z_branch 1 has y'/x' > 0 and z_branch 2 has y'/x' < 0.
    """
    if not 0 < abs(c1) < 1:
        raise InvalidParams(f"need 0 < |c1| < 1, got {c1}")
    if c2 <= 0:
        raise InvalidParams(f"need c2 > 0, got {c2}")
    if x_branch not in (1, -1) or z_branch not in (1, 2):
        raise InvalidParams("x_branch must be +-1 and z_branch 1 or 2")
    w = math.sqrt(1 - c1 * c1)
    ax = -x_branch * w / (c1 * math.sqrt(2 * c2))
    ay = x_branch * w * math.sqrt(c2) / (c1 * math.sqrt(2))
    if z_branch == 2:
        ay = -ay
    return CurveSpec(
        CoordSpec(cx, 0.0, ((ax, -c1),)),
        CoordSpec(cy, 0.0, ((ay, c1),)),
        CoordSpec(0.5 * math.log(c2), c1),
    )


# branch -> (sign of c1, x_branch)
_BRANCHES = {1: (1, 1), 2: (-1, 1), 3: (1, -1), 4: (-1, -1)}


@dataclass(frozen=True)
class TriharmonicHelixParams:
    c2: float = 1.0
    cx: float = 0.0
    cy: float = 0.0
    branch: int = 1
    c1: float | None = None

    def __post_init__(self):
        if self.branch not in _BRANCHES:
            raise InvalidParams(f"branch must be 1..4, got {self.branch}")
        if not self.c2 > 0:
            raise InvalidParams(f"c2 must be positive, got {self.c2}")
        expected = _BRANCHES[self.branch][0] * C1_ROOT
        if self.c1 is not None and abs(self.c1 - expected) > 1e-12:
            raise InvalidParams(f"branch {self.branch} requires c1 = {expected!r}, got {self.c1!r}")

    @property
    def c1_value(self) -> float:
        return _BRANCHES[self.branch][0] * C1_ROOT


def build_triharmonic_helix(p: TriharmonicHelixParams | None = None) -> CurveSpec:
    """Helix with kappa = 1/2, |tau| = 1/2 on one of the four branches.

    Branch 1 with c2 = 1, cx = cy = 0 is
    gamma(s) = (-e^{-s/sqrt2}/sqrt2, e^{s/sqrt2}/sqrt2, s/sqrt2).
    """
    p = p or TriharmonicHelixParams()
    sign, xb = _BRANCHES[p.branch]
    return helix_family_curve(sign * C1_ROOT, p.c2, p.cx, p.cy, x_branch=xb, z_branch=1)


def reference_helix() -> CurveSpec:
    return build_triharmonic_helix(TriharmonicHelixParams())


def normalizing_isometries(p: TriharmonicHelixParams) -> tuple[list[IsometrySpec], int]:
    """Isometries taking branch ``p`` onto the reference helix.

    Returns the generators and the parameter direction d such that the image
    at s equals the reference helix at d*s (branches 2 and 4 run backwards).
    """
    isos = [IsometrySpec("translate_x", -p.cx), IsometrySpec("translate_y", -p.cy),
            IsometrySpec("flow_z", -0.5 * math.log(p.c2))]
    if p.branch in (2, 3):
        isos += [IsometrySpec("reflect_x"), IsometrySpec("reflect_y")]
    return isos, (1 if p.branch in (1, 3) else -1)


# -- classification ----------------------------------------------------------

@dataclass
class HelixRoot:
    c1: float
    a: float
    b: float
    B3: float
    T3: float
    z_branch: int
    residual: float
    frame_B3: float = float("nan")
    frame_T3: float = float("nan")
    frame_consistent: bool = False


@dataclass
class ClassificationResult:
    roots: list[HelixRoot]
    residual_at_root: float
    b3_source: str = "both"
    samples: int = 0

    def to_json(self) -> dict:
        return {
            "roots": [asdict(r) for r in self.roots],
            "residual_at_root": self.residual_at_root,
            "b3_source": self.b3_source,
            "samples": self.samples,
        }


def frame_vertical_components(c1: float, z_branch: int, s: float = 0.0, order: int = 5):
    """(T3, N3, B3) read off the Frenet frame of the helix with T3 = c1."""
    cj = eval_curve(helix_family_curve(c1, z_branch=z_branch), s, order)
    return vertical_components(frenet_frame(cj), cj)


def _residual_fn(z_branch: int, b3_sign: int | None):
    """c1 -> normal residual with B3 = b3_sign*sqrt(1-c1^2), or B3 from the frame if None."""

    def fn(c1):
        a, b = helix_relations(c1, z_branch)
        if b3_sign is None:
            T3, _, B3 = frame_vertical_components(c1, z_branch)
        else:
            T3, B3 = c1, b3_sign * math.sqrt(1 - c1 * c1)
        return helix_algebraic_residuals(a, b, B3, T3)[0]

    return fn


def newton_polish(fn, x0: float, lo: float, hi: float) -> float:
    """Newton iteration with a central-difference slope, kept inside [lo, hi]."""
    x = x0
    for _ in range(NEWTON_MAXITER):
        f = fn(x)
        slope = (fn(x + NEWTON_H) - fn(x - NEWTON_H)) / (2 * NEWTON_H)
        if slope == 0:
            break
        step = f / slope
        x_new = min(max(x - step, lo), hi)
        if abs(x_new - x) <= NEWTON_TOL:
            return x_new
        x = x_new
    return x


def _scan_grid(n: int) -> np.ndarray:
    grid = -1 + (np.arange(n) + 0.5) * (2.0 / n)
    return grid[grid != 0.0]


def classify(c1_samples: int = 10_000, b3_source: str = "both") -> ClassificationResult:
    """Roots of the helix normal residual over c1 in (-1, 1) minus {0}.

    ``b3_source="both"`` treats both signs B3 = +-sqrt(1 - c1^2) as
    candidates; ``"frame"`` uses the B3 produced by the Frenet frame of the
    actual helix, so only geometrically realizable helices are scanned.  Each
    root records the frame's B3 either way.
    """
    if c1_samples < 1000:
        raise ValueError("c1_samples must be at least 1000")
    if b3_source not in ("both", "frame"):
        raise ValueError(f"b3_source must be 'both' or 'frame', got {b3_source!r}")
    grid = _scan_grid(c1_samples)
    step = 2.0 / c1_samples
    signs = (1, -1) if b3_source == "both" else (None,)

    roots: list[HelixRoot] = []
    for z_branch in (1, 2):
        for sign in signs:
            fn = _residual_fn(z_branch, sign)
            vals = np.array([fn(c) for c in grid])
            for i in range(len(grid) - 1):
                lo, hi = grid[i], grid[i + 1]
                if lo < 0 < hi:
                    continue
                if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0:
                    edge = 0.5 * step
                    c1 = newton_polish(fn, 0.5 * (lo + hi), max(lo - edge, -1 + 1e-15),
                                       min(hi + edge, 1 - 1e-15))
                    if any(r.z_branch == z_branch and abs(r.c1 - c1) < DEDUPE_TOL for r in roots):
                        continue
                    a, b = helix_relations(c1, z_branch)
                    if sign is None:
                        T3, _, B3 = frame_vertical_components(c1, z_branch)
                    else:
                        T3, B3 = c1, sign * math.sqrt(1 - c1 * c1)
                    fT3, _, fB3 = frame_vertical_components(c1, z_branch)
                    roots.append(HelixRoot(
                        c1=float(c1), a=a, b=b, B3=float(B3), T3=float(T3), z_branch=z_branch,
                        residual=abs(fn(c1)), frame_B3=float(fB3), frame_T3=float(fT3),
                        frame_consistent=bool(abs(fB3 - B3) <= 1e-8 and abs(fT3 - T3) <= 1e-8),
                    ))
    if not roots:
        raise NoRootsFound(f"no helix residual roots among {c1_samples} c1 samples "
                           f"(b3_source={b3_source!r})")
    roots.sort(key=lambda r: (r.c1, r.z_branch))
    return ClassificationResult(roots, max(r.residual for r in roots), b3_source, c1_samples)


@dataclass
class GridScanResult:
    flagged_cells: list[dict] = field(default_factory=list)
    nodes_scanned: int = 0
    step: float = 0.01


def grid_scan_reduced_quartic(step: float = 0.01, a_max: float = 3.0, b_max: float = 3.0) -> GridScanResult:
    """Coarse sign-change scan of :func:`reduced_quartic_constraint`.

    B3 runs over a grid of spacing ``step`` in [-1, 1]; for each node and
    each choice of the signs of T3 = +-sqrt(1 - B3^2) and of b, the helix
    relations fix a = |T3 B3| and |b| = B3^2.  Nodes with (a, b) outside
    (0, a_max] x [-b_max, b_max] are dropped.  A cell is flagged when the
    constraint changes sign (or vanishes) between adjacent nodes; it is
    reported with the (a, b, B3) box it spans, snapped to the same grid.
    """
    n = int(round(2.0 / step))
    B3 = np.linspace(-1.0, 1.0, n + 1)
    out = GridScanResult(step=step)
    for t_sign in (1, -1):
        for b_sign in (1, -1):
            T3 = t_sign * np.sqrt(np.clip(1 - B3 * B3, 0.0, None))
            a = np.abs(T3 * B3)
            b = b_sign * B3 * B3
            ok = (a > 0) & (a <= a_max) & (np.abs(b) <= b_max)
            q = reduced_quartic_constraint(a, b, B3)
            out.nodes_scanned += int(ok.sum())
            for i in range(n):
                if not (ok[i] and ok[i + 1]):
                    continue
                if q[i] == 0.0 or q[i] * q[i + 1] < 0:
                    lo = lambda v: math.floor(round(v / step, 9)) * step  # noqa: E731
                    out.flagged_cells.append({
                        "B3": [float(B3[i]), float(B3[i + 1])],
                        "a": [lo(min(a[i], a[i + 1])), lo(max(a[i], a[i + 1])) + step],
                        "b": [lo(min(b[i], b[i + 1])), lo(max(b[i], b[i + 1])) + step],
                        "T3_sign": t_sign,
                        "b_sign": b_sign,
                    })
    return out


# -- Frenet natural-equation integrator --------------------------------------

@dataclass
class IntegrationResult:
    s: np.ndarray
    points: np.ndarray   # (n, 3) coordinates x, y, z
    frames: np.ndarray   # (n, 3, 3) rows T, N, B in E-frame components
    max_drift: float


def _frenet_rhs(state: np.ndarray, a: float, b: float) -> np.ndarray:
    z = state[2]
    T, N, B = state[3:6], state[6:9], state[9:12]
    T1, T2, T3 = T
    ez = math.exp(z)

    def frame_rate(V, W):
        # V' from nabla_T V = W
        return (W[0] - T1 * V[2], W[1] + T2 * V[2], W[2] + T1 * V[0] - T2 * V[1])

    out = np.empty(12)
    out[0] = T1 / ez
    out[1] = T2 * ez
    out[2] = T3
    out[3:6] = frame_rate(T, a * N)
    out[6:9] = frame_rate(N, -a * T + b * B)
    out[9:12] = frame_rate(B, -b * N)
    return out


def _drift(state: np.ndarray) -> float:
    F = state[3:12].reshape(3, 3)
    return float(np.max(np.abs(F @ F.T - np.eye(3))))


def _rk4(rhs, y0: np.ndarray, step: float, s_max: float, drift_tol: float | None):
    n = int(round(s_max / step))
    if n < 1 or abs(n * step - s_max) > 1e-9 * max(1.0, s_max):
        raise ValueError("s_max must be a positive multiple of step")
    h = s_max / n
    ys = np.empty((n + 1, y0.size))
    ys[0] = y = y0.astype(float)
    max_drift = _drift(y) if y.size == 12 else 0.0
    for i in range(n):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        ys[i + 1] = y
        if drift_tol is not None:
            d = _drift(y)
            max_drift = max(max_drift, d)
            if d > drift_tol:
                raise FrameDrift(f"frame orthonormality error {d:.3e} at s = {(i + 1) * h:.6g}")
    return np.linspace(0.0, s_max, n + 1), ys, max_drift


def integrate_frenet_natural(a: float, b: float, init, step: float = 1e-3, s_max: float = 5.0,
                             drift_tol: float = 1e-6) -> IntegrationResult:
    """RK4 integration of the Frenet system with constant kappa = a, tau = b.

    ``init`` is (point, (T, N, B)) with frame vectors as E-frame components.
    The frame is monitored for orthonormality but never re-projected.
    """
    if a <= 0:
        raise ValueError("kappa must be positive; use integrate_geodesic for kappa = 0")
    if step <= 0:
        raise ValueError("step must be positive")
    p0, frame = init
    F = np.asarray(frame, dtype=float).reshape(3, 3)
    err = float(np.max(np.abs(F @ F.T - np.eye(3))))
    if err > 1e-10:
        raise ValueError(f"initial frame is not orthonormal (error {err:.3e})")
    y0 = np.concatenate([np.asarray(p0, dtype=float), F.ravel()])
    s, ys, drift = _rk4(lambda y: _frenet_rhs(y, a, b), y0, step, s_max, drift_tol)
    return IntegrationResult(s, ys[:, :3], ys[:, 3:].reshape(-1, 3, 3), drift)


def integrate_geodesic(p0, T0, step: float = 1e-3, s_max: float = 5.0) -> IntegrationResult:
    """RK4 integration of nabla_T T = 0 from ``p0`` with unit tangent ``T0``."""

    def rhs(y):
        T1, T2, T3 = y[3:6]
        ez = math.exp(y[2])
        return np.array([T1 / ez, T2 * ez, T3, -T1 * T3, T2 * T3, T1 * T1 - T2 * T2])

    y0 = np.concatenate([np.asarray(p0, float), np.asarray(T0, float)])
    s, ys, _ = _rk4(rhs, y0, step, s_max, None)
    frames = np.zeros((len(s), 3, 3))
    frames[:, 0, :] = ys[:, 3:6]
    return IntegrationResult(s, ys[:, :3], frames, 0.0)


def reference_initial_frame(spec: CurveSpec | None = None, s: float = 0.0):
    """(point, frame rows) of a closed-form curve, for seeding the integrator."""
    spec = spec or reference_helix()
    f = frenet_frame(eval_curve(spec, s))
    return Point3(*spec.point(s)), f.frame_matrix()


def integrator_deviation(step: float, s_max: float = 5.0, spec: CurveSpec | None = None,
                         a: float = 0.5, b: float = 0.5):
    """Max coordinate deviation of the integrated helix from ``spec`` and the frame drift."""
    spec = spec or reference_helix()
    res = integrate_frenet_natural(a, b, reference_initial_frame(spec), step, s_max)
    exact = np.array([spec.point(s) for s in res.s])
    return float(np.max(np.abs(res.points - exact))), res.max_drift


# -- orchestration -------------------------------------------------------------

# frozen regression floor: the r=2 tension of the reference helix evaluated to
# norm 0.25 (minimum over 101 samples 0.2499999999999997), rounded down at 1e-10
BIHARMONIC_FLOOR = 0.2499999999


def _check(name, max_residual, tolerance, passed=None, **extra):
    if passed is None:
        passed = bool(max_residual <= tolerance)
    entry = {"name": name, "pass": bool(passed), "max_residual": float(max_residual),
             "tolerance": float(tolerance)}
    entry.update(extra)
    return entry


def _cell_contains_root(cell: dict) -> bool:
    lo, hi = cell["B3"]
    return any(lo - 1e-12 <= v <= hi + 1e-12 for v in (C1_ROOT, -C1_ROOT))


def verify_theorem(kappa_target: float = 0.5, tau_target: float = 0.5, r: int = 3,
                   samples: int = 101, s_lo: float = -5.0, s_hi: float = 5.0,
                   c1_samples: int = 10_000, random_curves: int = 50, seed: int = 0) -> dict:
    """Run the full verification chain and return a JSON-ready report.

    ``kappa_target``/``tau_target`` and ``r`` exist for negative controls:
    perturbing a target makes the corresponding check fail, and r = 2 tests
    the biharmonic tension instead of the triharmonic one.
    """
    from .killing import proposition_check
    from .sampling import random_tangent_curve_jet
    from .tension import frenet_components, triharmonic_direct

    checks = []
    s_values = np.linspace(s_lo, s_hi, samples)

    cls = classify(c1_samples)
    c1_err = max(min(abs(rt.c1 - C1_ROOT), abs(rt.c1 + C1_ROOT)) for rt in cls.roots)
    ab = {(round(rt.a, 9), round(rt.b, 9)) for rt in cls.roots}
    checks.append(_check("classification.c1_roots", c1_err, 1e-10,
                         passed=c1_err <= 1e-10 and ab <= {(0.5, 0.5), (0.5, -0.5)},
                         ab_pairs=sorted(ab)))
    rel = max(max(abs(rt.a**2 - (rt.c1**2 - rt.c1**4)), abs(abs(rt.b) - (1 - rt.c1**2)))
              for rt in cls.roots)
    checks.append(_check("classification.helix_relations", rel, 1e-10))
    scan = grid_scan_reduced_quartic()
    extra = [c for c in scan.flagged_cells if not _cell_contains_root(c)]
    checks.append(_check("classification.grid_scan_extra_cells", len(extra), 0,
                         flagged=len(scan.flagged_cells)))
    b3_gap = max(abs(rt.B3 - rt.frame_B3) for rt in cls.roots)
    checks.append(_check("classification.roots_realized_by_frenet_frame", b3_gap, 1e-8,
                         frame_B3=[rt.frame_B3 for rt in cls.roots],
                         root_B3=[rt.B3 for rt in cls.roots]))

    spec = reference_helix()
    kappas, taus, speed, n3, res_direct, res_frenet, res_r = [], [], [], [], [], [], []
    for s in s_values:
        cj = eval_curve(spec, s)
        f = frenet_frame(cj)
        kappas.append(f.kappa.value)
        taus.append(f.tau.value)
        speed.append(speed_deviation(cj))
        n3.append(abs(vertical_components(f, cj)[1]))
        tr = tension_residual(spec, s)
        res_direct.append(tr.norm)
        res_frenet.append(float(np.linalg.norm(tr.frenet_vec)))
        res_r.append(float(np.linalg.norm(r_tension(spec, s, r))))
    checks.append(_check("helix.unit_speed", max(speed), 1e-12))
    checks.append(_check("helix.kappa", max(abs(k - kappa_target) for k in kappas), 1e-10,
                         target=kappa_target))
    checks.append(_check("helix.tau", max(abs(t - tau_target) for t in taus), 1e-10,
                         target=tau_target))
    checks.append(_check("helix.N3_vanishes", max(n3), 1e-10))
    if r == 3:
        checks.append(_check("residual.direct", max(res_direct), 1e-9))
        checks.append(_check("residual.frenet", max(res_frenet), 1e-9))
    else:
        checks.append(_check(f"residual.r{r}_tension", max(res_r), 1e-9, r=r))

    rng = np.random.default_rng(seed)
    gaps = []
    for _ in range(random_curves):
        cj = random_tangent_curve_jet(rng)
        f = frenet_frame(cj)
        gaps.append(float(np.linalg.norm(triharmonic_direct(cj)
                                         - frenet_to_frame(f, frenet_components(f)))))
    checks.append(_check("residual.two_path_agreement", max(gaps), 1e-7, curves=random_curves))

    bi = min(float(np.linalg.norm(r_tension(spec, s, 2))) for s in s_values)
    checks.append(_check("biharmonic.bounded_away_from_zero", bi, BIHARMONIC_FLOOR,
                         passed=bi >= BIHARMONIC_FLOOR, floor=BIHARMONIC_FLOOR))

    dev, drift = integrator_deviation(1e-3)
    dev_half, _ = integrator_deviation(5e-4)
    checks.append(_check("integrator.max_deviation", dev, 1e-6))
    checks.append(_check("integrator.frame_drift", drift, 1e-8))
    ratio = dev / dev_half if dev_half > 0 else float("inf")
    checks.append(_check("integrator.step_halving_ratio", ratio, 12.0, passed=ratio >= 12.0,
                         deviation_step=dev, deviation_half_step=dev_half))

    killing = proposition_check("V3")
    for c in killing["checks"]:
        checks.append(dict(c, name="killing.V3." + c["name"]))

    return {
        "checks": checks,
        "roots": [asdict(rt) for rt in cls.roots],
        "all_pass": all(c["pass"] for c in checks),
    }
