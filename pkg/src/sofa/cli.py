"""Command-line entry point.

Exit codes: 0 success, 1 solver failure, 2 a verification check failed,
64 invalid usage.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from . import ambidextrous as amb
from . import gerver as ger
from .algebraic import AlgebraicReport
from .numerics import NewtonError, QuadratureError, SingularMatrixError
from .paths import hammersley_area, hammersley_path
from .reference import (
    AMBI_AREA, AMBI_LENGTH, AMBI_TABLE, GERVER_AREA, GERVER_TABLE, HAMMERSLEY_R_STAR,
    relative_error,
)
from .render import animation_frames, export_csv, render_svg
from .shape import (
    DegeneratePathError, OpenBoundaryError, SofaShape, SweepConfig, area_by_boundary,
    attribute_boundary, build_shape, symmetrize_ambidextrous,
)
from .suite import run_suite

EXIT_OK, EXIT_SOLVER, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64
COMMANDS = ("hammersley", "gerver", "gerver-classic", "ambi", "verify", "render", "frames")
SHAPES = ("ambi", "gerver", "hammersley")
DEFAULT_N = 1024
VERIFY_N = 512

_SOLVER_ERRORS = (NewtonError, SingularMatrixError, QuadratureError, DegeneratePathError,
                  OpenBoundaryError, ArithmeticError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# output helpers


def _json_value(v, indent: int) -> str:
    pad, inner = "  " * indent, "  " * (indent + 1)
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            return json.dumps(str(v))
        return "%.17g" % v
    if isinstance(v, int) or isinstance(v, str):
        return json.dumps(v)
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_json_value(x, indent + 1)}" for k, x in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, (list, tuple)):
        if not v:
            return "[]"
        items = [f"{inner}{_json_value(x, indent + 1)}" for x in v]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if hasattr(v, "item"):
        return _json_value(v.item(), indent)
    raise TypeError(f"cannot serialise {type(v).__name__}")


def dumps(obj) -> str:
    """JSON with every float printed to 17 significant digits."""
    return _json_value(obj, 0) + "\n"


def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _table(rows: List[Tuple[str, float, Optional[bool]]], stream) -> None:
    width = max((len(r[0]) for r in rows), default=0)
    for name, value, ok in rows:
        mark = "" if ok is None else ("  ok" if ok else "  FAIL")
        stream.write(f"{name:<{width}}  {value:>24.17g}{mark}\n")


# --------------------------------------------------------------------------
# commands


def _check_rows(values: Dict[str, float], ref: Dict[str, float], rtol: float):
    return [(k, v, relative_error(v, ref[k]) <= rtol if k in ref else None) for k, v in values.items()]


def _build(kind: str, n: int, r: float = HAMMERSLEY_R_STAR) -> SofaShape:
    cfg = SweepConfig(n)
    if kind == "ambi":
        path = amb.ambi_rotation_path(amb.ambi_closed_form())
        return attribute_boundary(symmetrize_ambidextrous(build_shape(path, cfg)))
    if kind == "gerver":
        path = ger.gerver_rotation_path(ger.solve_gerver())
    else:
        path = hammersley_path(r)
    return attribute_boundary(build_shape(path, cfg))


def _shape_output(shape: SofaShape, fmt: str, out: Optional[str]) -> bool:
    """Write CSV or SVG; returns False for JSON so the caller handles it."""
    if fmt == "csv":
        _emit(export_csv(shape), out)
    elif fmt == "svg":
        _emit(render_svg(shape), out)
    else:
        return False
    return True


def cmd_hammersley(args) -> Tuple[dict, list, bool]:
    r = HAMMERSLEY_R_STAR if args.r is None else args.r
    if not 0.0 <= r <= 1.0:
        raise UsageError("--r must lie in [0, 1]")
    analytic = hammersley_area(r)
    data = {"r": r, "area_analytic": analytic}
    rows = [("r", r, None), ("area (analytic)", analytic, None)]
    if args.n_angles is not None or args.format != "json":
        shape = _build("hammersley", args.n_angles or DEFAULT_N, r)
        if _shape_output(shape, args.format, args.out):
            return None, rows, True
        data.update(n_angles=shape.n_angles, area_polygon=shape.area_polygon,
                    area_boundary=area_by_boundary(shape))
        rows += [("area (polygon)", shape.area_polygon, None),
                 ("area (boundary)", data["area_boundary"], None)]
    return data, rows, True


def cmd_gerver(args):
    params = ger.solve_gerver(tol=min(args.tol, 1e-12))
    values = params.as_dict()
    red = ger.redundancy_residuals(params)
    rows = _check_rows(values, GERVER_TABLE, 1e-11)
    ok = all(r[2] for r in rows)
    data = {"constants": values, "redundancy_residuals": red}
    if args.n_angles is not None or args.format != "json":
        shape = _build("gerver", args.n_angles or DEFAULT_N)
        if _shape_output(shape, args.format, args.out):
            return None, rows, ok
        area = area_by_boundary(shape)
        data.update(n_angles=shape.n_angles, area_polygon=shape.area_polygon, area_boundary=area)
        good = abs(area - GERVER_AREA) <= 1e-6
        ok = ok and good
        rows.append(("area (boundary)", area, good))
    return data, rows, ok


def cmd_gerver_classic(args):
    classic = ger.solve_gerver_classic(tol=min(args.tol, 1e-12))
    params = ger.solve_gerver(tol=min(args.tol, 1e-12))
    gap = max(abs(classic.phi - params.phi), abs(classic.theta - params.theta))
    data = {"constants": classic.as_dict(), "residuals": list(map(float, classic.residuals())),
            "angle_gap_vs_solver": gap}
    rows = _check_rows(classic.as_dict(), GERVER_TABLE, 1e-10)
    rows.append(("angle gap vs 22-unknown solve", gap, gap <= 1e-10))
    return data, rows, all(r[2] in (True, None) for r in rows)


def cmd_ambi(args):
    closed = amb.ambi_closed_form()
    metrics = amb.ambi_metrics(closed)
    if args.format != "json":
        shape = _build("ambi", args.n_angles or DEFAULT_N)
        _shape_output(shape, args.format, args.out)
        return None, [("area (polygon)", shape.area_polygon, None)], True
    f1, f2 = amb.focal_points(closed)
    data = {"constants": closed.as_dict(), "metrics": metrics.as_dict(),
            "focal_points": [list(map(float, f1)), list(map(float, f2))],
            "redundancy_residuals": amb.redundancy_residuals(closed)}
    rows = _check_rows(closed.as_dict(), AMBI_TABLE, 1e-13)
    rows.append(("area Delta", metrics.area_delta, abs(metrics.area_delta - AMBI_AREA) <= 1e-11))
    rows.append(("length lambda", metrics.length_lambda,
                 abs(metrics.length_lambda - AMBI_LENGTH) <= 1e-12))
    return data, rows, all(r[2] in (True, None) for r in rows)


def cmd_verify(args):
    report: AlgebraicReport = run_suite(args.n_angles or VERIFY_N, segment=args.segment)
    data = {"passed": report.passed, "checks": report.as_list()}
    rows = [(c.check, c.residual, c.passed) for c in report.checks]
    return data, rows, report.passed


def cmd_render(args):
    shape = _build(args.shape, args.n_angles or DEFAULT_N, args.r or HAMMERSLEY_R_STAR)
    fmt = "svg" if args.format == "json" else args.format
    _shape_output(shape, fmt, args.out)
    return None, [("area (polygon)", shape.area_polygon, None),
                  ("segments", float(len(shape.boundary_segments)), None)], True


def cmd_frames(args):
    if args.out is None:
        raise UsageError("frames needs --out DIR")
    if args.frames < 1:
        raise UsageError("--frames must be at least 1")
    kind = args.shape
    if kind == "ambi":
        path = amb.ambi_rotation_path(amb.ambi_closed_form())
    elif kind == "gerver":
        path = ger.gerver_rotation_path(ger.solve_gerver())
    else:
        path = hammersley_path(args.r or HAMMERSLEY_R_STAR)
    shape = None
    if args.n_angles is not None:
        shape = build_shape(path, SweepConfig(args.n_angles))
        if kind == "ambi":
            shape = symmetrize_ambidextrous(shape)
    frames = animation_frames(path, args.frames, args.out, shape)
    return None, [("frames written", float(len(frames)), None)], True


_HANDLERS = {
    "hammersley": cmd_hammersley, "gerver": cmd_gerver, "gerver-classic": cmd_gerver_classic,
    "ambi": cmd_ambi, "verify": cmd_verify, "render": cmd_render, "frames": cmd_frames,
}


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sofa", description="Moving-sofa shapes: solvers, builders and checks.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("shape", nargs="?", choices=SHAPES, default="ambi",
                   help="shape for render and frames (default ambi)")
    p.add_argument("--out", help="output file (directory for frames); stdout if omitted")
    p.add_argument("--format", choices=("json", "csv", "svg"), default="json")
    p.add_argument("--tol", type=float, default=1e-12, help="solver tolerance in [1e-15, 1e-3]")
    p.add_argument("--n-angles", type=int, default=None,
                   help=f"hallway copies for shape builds (default {DEFAULT_N}, {VERIFY_N} for verify)")
    p.add_argument("--frames", type=int, default=24, help="number of animation frames")
    p.add_argument("--r", type=float, default=None, help="Hammersley radius (default 2/pi)")
    p.add_argument("--segment", help="check one boundary piece only, e.g. sigma9")
    return p


def _validate(args) -> None:
    if not 1e-15 <= args.tol <= 1e-3:
        raise UsageError("--tol must lie in [1e-15, 1e-3]")
    if args.n_angles is not None and not 8 <= args.n_angles <= 65536:
        raise UsageError("--n-angles must lie in [8, 65536]")


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _validate(args)
        data, rows, ok = _HANDLERS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"sofa: error: {exc}\n")
        return EXIT_USAGE
    except KeyError as exc:
        sys.stderr.write(f"sofa: error: {exc.args[0]}\n")
        return EXIT_USAGE
    except _SOLVER_ERRORS as exc:
        sys.stderr.write(f"sofa: solver failure: {exc}\n")
        return EXIT_SOLVER
    if data is not None:
        _emit(dumps(data), args.out)
    # the table goes to stderr when stdout carries the artifact
    to_stdout = args.out is not None
    _table(rows, sys.stdout if to_stdout else sys.stderr)
    return EXIT_OK if ok else EXIT_VERIFY


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
