"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed or a computation was
impossible on the given input, 2 usage error.  CSV goes to stdout with a
header row and floats written with 17 significant digits.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import sys

import numpy as np

from .curve_io import load_curve
from .curves import eval_curve, frenet_frame, geodesic_curvature_sq
from .errors import GeodesicDegeneracy, InvalidParams, SolCurvesError
from .geometry import KILLING_IDS, Point3
from .helix import classify, integrate_frenet_natural, reference_initial_frame, verify_theorem
from .killing import killing_angle_with_tangent, killing_length_along, proposition_check
from .tension import frenet_components, tension_field

PROG = "sol-curves"
FLAT_TOL = 1e-20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(v) -> str:
    return format(float(v), ".17g")


def parse_s_range(text: str) -> np.ndarray:
    """LO:HI:N with N the inclusive number of samples."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected LO:HI:N, got {text!r}")
    try:
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI:N, got {text!r}") from None
    if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)):
        raise argparse.ArgumentTypeError("N must be >= 1 and LO, HI finite")
    if n == 1:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def _curve_arg(text: str):
    try:
        return load_curve(text)
    except (ValueError, InvalidParams) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    except SolCurvesError as exc:
        raise argparse.ArgumentTypeError(f"{type(exc).__name__}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog=PROG, description="Curves, Frenet frames and triharmonic helices in Sol.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("verify", help="run the full verification chain, print a JSON report")

    f = sub.add_parser("frenet", help="CSV of the Frenet frame, curvature and torsion")
    f.add_argument("--curve", required=True, type=_curve_arg)
    f.add_argument("--s-range", required=True, type=parse_s_range)

    r = sub.add_parser("residual", help="CSV of the r-harmonic tension")
    r.add_argument("--curve", required=True, type=_curve_arg)
    r.add_argument("--r", type=int, default=3, choices=(2, 3, 4))
    r.add_argument("--s-range", required=True, type=parse_s_range)

    c = sub.add_parser("classify", help="JSON list of triharmonic helix roots")
    c.add_argument("--samples", type=int, default=10_000)
    c.add_argument("--b3-source", choices=("both", "frame"), default="both")

    i = sub.add_parser("integrate", help="CSV trajectory of the Frenet system with constant kappa, tau")
    i.add_argument("--kappa", type=float, required=True)
    i.add_argument("--tau", type=float, required=True)
    i.add_argument("--step", type=float, default=1e-3)
    i.add_argument("--s-max", type=float, default=5.0)
    i.add_argument("--init-from-reference", action="store_true",
                   help="start from the reference helix frame at s=0 (default: origin, E1, E2, E3)")

    k = sub.add_parser("killing", help="CSV of Killing-field length and angle with the tangent")
    k.add_argument("--curve", required=True, type=_curve_arg)
    k.add_argument("--field", required=True, choices=KILLING_IDS)
    k.add_argument("--s-range", required=True, type=parse_s_range)
    return p


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def cmd_verify(args, out, err) -> int:
    report = verify_theorem()
    killing = [proposition_check("V1"), proposition_check("V3")]
    residual_names = ("residual.direct", "residual.frenet")
    max_res = max(c["max_residual"] for c in report["checks"] if c["name"] in residual_names)
    doc = {
        "checks": report["checks"],
        "roots": report["roots"],
        "killing": killing,
        "max_triharmonic_residual": max_res,
        "all_pass": report["all_pass"] and all(k["all_pass"] for k in killing),
    }
    json.dump(doc, out, indent=2)
    out.write("\n")
    return 0 if doc["all_pass"] else 1


def cmd_frenet(args, out, err) -> int:
    rows = []
    for s in args.s_range:
        cj = eval_curve(args.curve, s)
        fr = frenet_frame(cj)
        rows.append([fmt(v) for v in (s, *cj.point, *fr.frame_matrix().ravel(),
                                      fr.kappa.value, fr.tau.value)])
    w = _writer(out)
    w.writerow(["s", "x", "y", "z", "T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3",
                "kappa", "tau"])
    w.writerows(rows)
    return 0


def _frenet_or_flat(cj):
    try:
        return frenet_components(frenet_frame(cj))
    except GeodesicDegeneracy:
        # every term carries kappa or a derivative of it
        if np.all(np.abs(geodesic_curvature_sq(cj).coeffs) <= FLAT_TOL):
            return (0.0, 0.0, 0.0)
        return (math.nan, math.nan, math.nan)


def cmd_residual(args, out, err) -> int:
    w = _writer(out)
    header = ["s", "res1", "res2", "res3", "res_norm"]
    if args.r == 3:
        header += ["res_T", "res_N", "res_B"]
    w.writerow(header)
    order = max(8, 2 * args.r + 2)
    for s in args.s_range:
        cj = eval_curve(args.curve, s, order)
        v = tension_field(cj, args.r)
        row = [s, *v, np.linalg.norm(v)]
        if args.r == 3:
            row += list(_frenet_or_flat(cj))
        w.writerow([fmt(x) for x in row])
    return 0


def cmd_classify(args, out, err) -> int:
    if args.samples < 1000:
        raise UsageError("--samples must be at least 1000")
    json.dump(classify(args.samples, args.b3_source).to_json(), out, indent=2)
    out.write("\n")
    return 0


def cmd_integrate(args, out, err) -> int:
    if not args.kappa > 0:
        raise UsageError("--kappa must be positive")
    if not args.step > 0 or not args.s_max > 0:
        raise UsageError("--step and --s-max must be positive")
    if args.init_from_reference:
        init = reference_initial_frame()
    else:
        init = (Point3(0.0, 0.0, 0.0), np.eye(3))
    try:
        res = integrate_frenet_natural(args.kappa, args.tau, init, args.step, args.s_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = _writer(out)
    w.writerow(["s", "x", "y", "z", "T1", "T2", "T3", "N1", "N2", "N3", "B1", "B2", "B3"])
    for s, p, F in zip(res.s, res.points, res.frames):
        w.writerow([fmt(v) for v in (s, *p, *F.ravel())])
    print(f"max_frame_drift={fmt(res.max_drift)}", file=err)
    return 0


def cmd_killing(args, out, err) -> int:
    w = _writer(out)
    w.writerow(["s", "length", "angle"])
    for s in args.s_range:
        w.writerow([fmt(s), fmt(killing_length_along(args.curve, args.field, s)),
                    fmt(killing_angle_with_tangent(args.curve, args.field, s))])
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "frenet": cmd_frenet,
    "residual": cmd_residual,
    "classify": cmd_classify,
    "integrate": cmd_integrate,
    "killing": cmd_killing,
}


VALUE_FLAGS = ("--s-range", "--kappa", "--tau", "--step", "--s-max")


def _join_negative_values(argv):
    # argparse would take "--s-range -5:5:101" for two options
    out, it = [], iter(argv)
    for a in it:
        if a in VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] == "."):
                out.append(f"{a}={nxt}")
                continue
            out.append(a)
            if nxt is not None:
                out.append(nxt)
            continue
        out.append(a)
    return out


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_join_negative_values(argv))
        return COMMANDS[args.command](args, out, err)
    except UsageError as exc:
        print(f"{PROG}: error: {exc}", file=err)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except SolCurvesError as exc:
        print(f"{PROG}: {type(exc).__name__}: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())
