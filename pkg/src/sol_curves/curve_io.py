"""Curve sources for the command line: builtin names or JSON files."""
from __future__ import annotations

import json
from pathlib import Path
from urllib.parse import parse_qsl

from .curves import CurveSpec, vertical_line
from .helix import TriharmonicHelixParams, build_triharmonic_helix
from .killing import constant_z_curve

BUILTIN_PREFIX = "builtin:"

_PARAMS = {
    "triharmonic-helix": {"c2": float, "cx": float, "cy": float, "branch": int},
    "constant-z": {"beta": float, "c": float, "cx": float, "cy": float},
    "vertical-line": {},
}


def _parse_params(name: str, query: str) -> dict:
    allowed = _PARAMS[name]
    out = {}
    for key, raw in parse_qsl(query, keep_blank_values=True, strict_parsing=bool(query)):
        if key not in allowed:
            raise ValueError(f"builtin {name!r} has no parameter {key!r}")
        try:
            out[key] = allowed[key](raw)
        except ValueError:
            raise ValueError(f"bad value {raw!r} for {name} parameter {key!r}") from None
    return out


def parse_builtin(source: str) -> CurveSpec:
    """``builtin:NAME[?k=v&...]`` -> CurveSpec."""
    name, _, query = source[len(BUILTIN_PREFIX):].partition("?")
    if name not in _PARAMS:
        raise ValueError(f"unknown builtin curve {name!r} (known: {', '.join(_PARAMS)})")
    params = _parse_params(name, query)
    if name == "triharmonic-helix":
        return build_triharmonic_helix(TriharmonicHelixParams(**params))
    if name == "constant-z":
        if "beta" not in params:
            raise ValueError("builtin constant-z needs beta")
        return constant_z_curve(**params)
    return vertical_line()


def load_curve(source: str) -> CurveSpec:
    """Resolve a builtin name or read a curve JSON file."""
    if source.startswith(BUILTIN_PREFIX):
        return parse_builtin(source)
    path = Path(source)
    try:
        obj = json.loads(path.read_text())
    except OSError as exc:
        raise ValueError(f"cannot read curve file {source!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ValueError(f"curve file {source!r} is not valid JSON: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ValueError("curve JSON must be an object with keys x, y, z")
    return CurveSpec.from_json(obj)
