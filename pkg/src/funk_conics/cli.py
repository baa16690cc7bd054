"""Command-line front end: ``funk-conics <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error.
Coordinates are given as ``x,y``; a value starting with a minus sign must
be attached with ``=``, as in ``--focus=-0.3,0.4``.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import oracle
from .core import DiskPoint, DomainError, TangentVector, funk_distance, funk_norm
from .lines import Direction, HorizontalLine, line_distance
from .parabola import (
    Branch,
    ClassificationError,
    DegenerateSpecError,
    ParabolaSpec,
    ParabolaType,
    canonical_ellipse,
    classify,
    conic_coefficients,
    degenerate_locus,
    type34_coefficients,
)
from .render import FIGURES, RenderScene, emit_svg, fmt_short, read_csv_points, render_csv
from .tracing import DEFAULT_RESOLUTION, DEFAULT_TOLERANCE, trace_locus

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2

SUITE_RESOLUTION = 200


class UsageError(Exception):
    pass


def default_tolerance() -> float:
    raw = os.environ.get("FUNK_CONICS_TOL")
    if not raw:
        return DEFAULT_TOLERANCE
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"FUNK_CONICS_TOL={raw!r} is not a number") from None
    if not tol > 0.0:
        raise UsageError("FUNK_CONICS_TOL must be positive")
    return tol


def parse_pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}")
    try:
        x, y = (float(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two decimals x,y but got {text!r}") from None
    if not (math.isfinite(x) and math.isfinite(y)):
        raise argparse.ArgumentTypeError(f"coordinates must be finite, got {text!r}")
    return x, y


def _emit(args, data: dict, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print("\n".join(lines))


def _write_text(path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


# --- commands ----------------------------------------------------------------


def cmd_dist(args) -> int:
    P, Q = DiskPoint(*args.from_), DiskPoint(*args.to)
    res = funk_distance(P, Q)
    _emit(args, {"distance": res.distance, "r": res.r, "k": res.k, "witness": None}, [
        f"distance = {fmt_short(res.distance)}",
        f"r = {fmt_short(res.r)}",
        f"k = {fmt_short(res.k)}",
    ])
    return EXIT_OK


def cmd_norm(args) -> int:
    value = funk_norm(DiskPoint(*args.at), TangentVector(*args.dir))
    _emit(args, {"norm": value}, [f"norm = {fmt_short(value)}"])
    return EXIT_OK


def cmd_line_dist(args) -> int:
    P = DiskPoint(*args.point)
    res = line_distance(P, HorizontalLine(args.y0), Direction(args.direction))
    data = {"distance": res.distance, "witness": list(res.witness), "attained": res.attained}
    lines = [
        f"distance = {fmt_short(res.distance)}",
        f"witness = ({fmt_short(res.witness[0])}, {fmt_short(res.witness[1])})",
    ]
    if not res.attained:
        lines.append("infimum approached at the chord endpoint, not attained")
    _emit(args, data, lines)
    return EXIT_OK


def _spec(args) -> ParabolaSpec:
    return ParabolaSpec(args.focus[0], args.focus[1], args.y0, args.type)


def _degenerate_notice(spec: ParabolaSpec) -> None:
    print(
        f"notice: focus lies on the directrix y={spec.y0:g}; using the degenerate locus",
        file=sys.stderr,
    )


def _parabola_coeffs(args, spec: ParabolaSpec) -> int:
    if spec.kind in (ParabolaType.TYPE1, ParabolaType.TYPE2):
        if spec.degenerate:
            return _print_degenerate(args, spec)
        co = conic_coefficients(spec)
        data = {"type": int(spec.kind), "B": co.B, "C": co.C, "E": co.E, "sigma": co.sigma,
                "sign": co.sign, "ybar": f"1{'+' if co.bar_sign > 0 else '-'}y"}
        lines = [
            f"type {int(spec.kind)}: x^2 + B x ybar + C ybar^2 + E ybar = 0, ybar = {data['ybar']}",
            f"B = {fmt_short(co.B)}",
            f"C = {fmt_short(co.C)}",
            f"E = {fmt_short(co.E)}",
            f"sigma = {fmt_short(co.sigma)}",
            f"sgn(y0 - g0) = {co.sign:+d}",
        ]
        _emit(args, data, lines)
        return EXIT_OK
    data = {"type": int(spec.kind), "branches": {}}
    lines = [f"type {int(spec.kind)}: ybar^4 + x^2 ybar^2 - 2 ybar^3 + A ybar^2 + B x ybar + C ybar + D = 0"]
    for br in Branch:
        co = type34_coefficients(spec, br)
        ybar = f"1{'+' if co.bar_sign > 0 else '-'}y"
        data["branches"][br.value] = {"A": co.A, "B": co.B, "C": co.C, "D": co.D,
                                      "sigma": co.sigma, "ybar": ybar}
        lines.append(
            f"{br.value} (ybar = {ybar}): A = {fmt_short(co.A)}, B = {fmt_short(co.B)}, "
            f"C = {fmt_short(co.C)}, D = {fmt_short(co.D)}, sigma = {fmt_short(co.sigma)}"
        )
    _emit(args, data, lines)
    return EXIT_OK


def _print_degenerate(args, spec: ParabolaSpec) -> int:
    _degenerate_notice(spec)
    segs = degenerate_locus(spec).segments
    data = {"type": int(spec.kind), "degenerate": True, "segments": [[list(a), list(b)] for a, b in segs]}
    lines = [
        f"segment ({fmt_short(a[0])}, {fmt_short(a[1])}) -- ({fmt_short(b[0])}, {fmt_short(b[1])})"
        for a, b in segs
    ]
    _emit(args, data, lines)
    return EXIT_OK


def _parabola_classify(args, spec: ParabolaSpec) -> int:
    if spec.kind not in (ParabolaType.TYPE1, ParabolaType.TYPE2):
        raise UsageError("classify applies to type 1 and type 2 parabolas (second-degree curves)")
    if spec.degenerate:
        return _print_degenerate(args, spec)
    co = conic_coefficients(spec)
    kind = classify(co)
    _emit(args, {"type": int(spec.kind), "discriminant": co.discriminant, "class": kind.value},
          [f"discriminant = {fmt_short(co.discriminant)}", f"class = {kind.value}"])
    return EXIT_OK


def _parabola_canonical(args, spec: ParabolaSpec) -> int:
    if spec.kind is not ParabolaType.TYPE1:
        raise UsageError("canonical form is available for type 1 parabolas (ellipses)")
    if spec.degenerate:
        return _print_degenerate(args, spec)
    el = canonical_ellipse(spec)
    data = {"center": list(el.center), "semi_axes": list(el.semi_axes),
            "axis_direction": list(el.axis_direction), "vertices": [list(v) for v in el.vertices],
            "rotation": list(el.rotation)}
    lines = [
        f"center = ({fmt_short(el.center[0])}, {fmt_short(el.center[1])})",
        f"semi-axes = {fmt_short(el.semi_axes[0])}, {fmt_short(el.semi_axes[1])}",
        f"axis direction = ({fmt_short(el.axis_direction[0])}, {fmt_short(el.axis_direction[1])})",
    ] + [f"vertex ({fmt_short(x)}, {fmt_short(y)})" for x, y in el.vertices]
    _emit(args, data, lines)
    return EXIT_OK


def _parabola_trace(args, spec: ParabolaSpec) -> int:
    if spec.degenerate and spec.kind in (ParabolaType.TYPE1, ParabolaType.TYPE2):
        _degenerate_notice(spec)
    locus = trace_locus(spec, resolution=args.resolution, tolerance=args.tolerance)
    text = render_csv(locus)
    if args.csv:
        _write_text(args.csv, text)
    if args.svg:
        title = f"type {int(spec.kind)} focus ({spec.f0:g}, {spec.g0:g}) directrix y={spec.y0:g}"
        emit_svg(RenderScene.from_locus(locus, title=title), args.svg)
    if not args.csv and not args.svg:
        sys.stdout.write(text)
    elif args.json:
        print(json.dumps({"points": len(locus), "components": len(locus.components)}))
    else:
        print(f"{len(locus)} points in {len(locus.components)} component(s)")
    return EXIT_OK


def _trace_tolerance(args) -> float:
    # the oracle judges the points; tracing only needs to keep them
    return max(args.tolerance, DEFAULT_TOLERANCE)


def _parabola_verify(args, spec: ParabolaSpec) -> int:
    locus = trace_locus(spec, resolution=args.resolution, tolerance=_trace_tolerance(args))
    report = oracle.verify_points(locus.points, spec)
    return _report(args, report)


def _report(args, report: oracle.ResidualReport) -> int:
    ok = report.max_residual < args.tolerance
    where = None if report.argmax_point is None else list(report.argmax_point)
    data = {"max_residual": report.max_residual, "argmax_point": where,
            "n_checked": report.n_checked, "tolerance": args.tolerance, "ok": ok}
    lines = [
        f"checked {report.n_checked} points",
        f"max residual = {fmt_short(report.max_residual)}"
        + ("" if where is None else f" at ({fmt_short(where[0])}, {fmt_short(where[1])})"),
        "PASS" if ok else f"FAIL (tolerance {fmt_short(args.tolerance)})",
    ]
    _emit(args, data, lines)
    return EXIT_OK if ok else EXIT_VERIFY


_PARABOLA_ACTIONS = {
    "coeffs": _parabola_coeffs,
    "classify": _parabola_classify,
    "canonical": _parabola_canonical,
    "trace": _parabola_trace,
    "verify": _parabola_verify,
}


def cmd_parabola(args) -> int:
    spec = _spec(args)
    return _PARABOLA_ACTIONS[args.action](args, spec)


def random_spec(rng: np.random.Generator, kind: int, min_gap: float = 1e-3) -> ParabolaSpec:
    """Random non-degenerate spec with focus norm below 0.95."""
    while True:
        r = 0.95 * math.sqrt(rng.uniform())
        a = rng.uniform(0.0, 2.0 * math.pi)
        f0, g0 = r * math.cos(a), r * math.sin(a)
        y0 = rng.uniform(-0.95, 0.95)
        if abs(g0 - y0) > min_gap:
            return ParabolaSpec(f0, g0, y0, kind)


def cmd_verify(args) -> int:
    if args.csv:
        if args.type is None or args.focus is None or args.y0 is None:
            raise UsageError("verify --csv needs --type, --focus and --y0")
        try:
            text = Path(args.csv).read_text(encoding="utf-8")
        except OSError as exc:
            raise OSError(f"cannot read {args.csv}: {exc.strerror or exc}") from exc
        pts = read_csv_points(text)
        return _report(args, oracle.verify_points(pts, _spec(args)))
    rng = np.random.default_rng(args.seed)
    resolution = args.resolution or SUITE_RESOLUTION
    worst = 0.0
    rows = {}
    for kind in (1, 2, 3, 4):
        kind_worst, n = 0.0, 0
        for _ in range(args.count):
            spec = random_spec(rng, kind)
            locus = trace_locus(spec, resolution=resolution, tolerance=_trace_tolerance(args))
            rep = oracle.verify_points(locus.points, spec)
            kind_worst = max(kind_worst, rep.max_residual)
            n += rep.n_checked
        rows[kind] = {"max_residual": kind_worst, "n_checked": n}
        worst = max(worst, kind_worst)
    ok = worst < args.tolerance
    data = {"seed": args.seed, "count": args.count, "types": {str(k): v for k, v in rows.items()},
            "tolerance": args.tolerance, "ok": ok}
    lines = [f"type {k}: {v['n_checked']} points, max residual {fmt_short(v['max_residual'])}"
             for k, v in rows.items()]
    lines.append("PASS" if ok else f"FAIL (tolerance {fmt_short(args.tolerance)})")
    _emit(args, data, lines)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_scan(args) -> int:
    spec = _spec(args)
    if not args.pitch > 0.0:
        raise UsageError("--pitch must be positive")
    report, cloud = oracle.grid_scan(spec, pitch=args.pitch)
    if args.csv:
        lines = ["x,y"] + ["%.17g,%.17g" % (x, y) for x, y in cloud]
        _write_text(args.csv, "\n".join(lines) + "\n")
    if args.svg:
        emit_svg(RenderScene(spec.y0, spec.focus, [], cloud), args.svg)
    where = None if report.argmax_point is None else list(report.argmax_point)
    _emit(args, {"n_checked": report.n_checked, "cloud_size": len(cloud),
                 "max_residual": report.max_residual, "argmax_point": where}, [
        f"grid nodes = {report.n_checked}",
        f"near-zero cloud = {len(cloud)} points",
        f"max residual in cloud = {fmt_short(report.max_residual)}",
    ])
    return EXIT_OK


def cmd_figures(args) -> int:
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for idx, spec in FIGURES.items():
        locus = trace_locus(spec, resolution=args.resolution, tolerance=args.tolerance)
        title = f"Figure {idx}: type {int(spec.kind)} focus ({spec.f0:g}, {spec.g0:g}) directrix y={spec.y0:g}"
        emit_svg(RenderScene.from_locus(locus, title=title), out / f"figure{idx}.svg")
        _write_text(out / f"figure{idx}.csv", render_csv(locus))
        print(f"figure {idx}: {len(locus)} points -> {out / f'figure{idx}.svg'}")
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    tracing = argparse.ArgumentParser(add_help=False)
    tracing.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION,
                         help="sweep stations per branch (default %(default)s)")
    tracing.add_argument("--tolerance", type=float, default=None,
                         help="residual tolerance (default 1e-9 or $FUNK_CONICS_TOL)")

    spec_args = argparse.ArgumentParser(add_help=False)
    spec_args.add_argument("--type", type=int, choices=(1, 2, 3, 4), required=True)
    spec_args.add_argument("--focus", type=parse_pair, required=True, metavar="X,Y")
    spec_args.add_argument("--y0", type=float, required=True, help="directrix y = y0")

    parser = argparse.ArgumentParser(prog="funk-conics", description="Funk metric and Funk parabolas on the unit disk.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dist", parents=[common], help="Funk distance between two points")
    p.add_argument("--from", dest="from_", type=parse_pair, required=True, metavar="X,Y")
    p.add_argument("--to", type=parse_pair, required=True, metavar="X,Y")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("norm", parents=[common], help="Funk norm of a tangent vector")
    p.add_argument("--at", type=parse_pair, required=True, metavar="X,Y")
    p.add_argument("--dir", type=parse_pair, required=True, metavar="Y1,Y2")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("line-dist", parents=[common], help="distance between a point and a horizontal chord")
    p.add_argument("--point", type=parse_pair, required=True, metavar="X,Y")
    p.add_argument("--y0", type=float, required=True)
    p.add_argument("--direction", choices=[d.value for d in Direction], default=Direction.POINT_TO_LINE.value)
    p.set_defaults(func=cmd_line_dist)

    p = sub.add_parser("parabola", parents=[common, tracing, spec_args], help="Funk parabola operations")
    p.add_argument("action", choices=sorted(_PARABOLA_ACTIONS))
    p.add_argument("--csv", metavar="PATH", help="write traced points as CSV")
    p.add_argument("--svg", metavar="PATH", help="write the traced scene as SVG")
    p.set_defaults(func=cmd_parabola)

    p = sub.add_parser("verify", parents=[common], help="check traced loci with the brute-force oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=5, help="random specs per type")
    p.add_argument("--resolution", type=int, default=None,
                   help=f"sweep stations (default {SUITE_RESOLUTION})")
    p.add_argument("--tolerance", type=float, default=None)
    p.add_argument("--csv", metavar="PATH", help="re-verify the points of a trace CSV")
    p.add_argument("--type", type=int, choices=(1, 2, 3, 4))
    p.add_argument("--focus", type=parse_pair, metavar="X,Y")
    p.add_argument("--y0", type=float)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common, spec_args], help="grid scan of the residual")
    p.add_argument("--pitch", type=float, default=oracle.SCAN_PITCH)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("figures", parents=[tracing], help="write the eight reference figures")
    p.add_argument("--outdir", default="figures")
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "tolerance", "absent") is None:
            args.tolerance = default_tolerance()
        if hasattr(args, "tolerance") and not args.tolerance > 0.0:
            raise UsageError("--tolerance must be positive")
        if getattr(args, "resolution", None) is not None and args.resolution < 2:
            raise UsageError("--resolution must be at least 2")
        return args.func(args)
    except (UsageError, DomainError, DegenerateSpecError, ClassificationError, ValueError) as exc:
        print(f"funk-conics: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"funk-conics: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
