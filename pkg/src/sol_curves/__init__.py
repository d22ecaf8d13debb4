"""Curves in Sol space: jets, Frenet frames, r-harmonic tension and helices."""
from .curves import CoordSpec, CurveSpec, eval_curve, frenet_frame
from .geometry import IsometrySpec, Point3, killing_field
from .helix import (
    TriharmonicHelixParams,
    build_triharmonic_helix,
    classify,
    integrate_frenet_natural,
    verify_theorem,
)
from .jets import Jet

__version__ = "0.1.0"
