"""SVG scenes and CSV tables for traced parabolas."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .parabola import ParabolaSpec

VIEWBOX = "-1.05 -1.05 2.1 2.1"
PIXELS = 600

# focus (f0, g0), directrix y0 and type of the eight reference figures
FIGURES = {
    1: ParabolaSpec(0.3, -0.4, 0.5, 1),
    2: ParabolaSpec(0.3, 0.4, -0.5, 1),
    3: ParabolaSpec(0.3, -0.4, 0.5, 2),
    4: ParabolaSpec(0.3, 0.4, -0.5, 2),
    5: ParabolaSpec(0.0, 0.0, 0.3, 3),
    6: ParabolaSpec(0.6, 0.0, 0.3, 3),
    7: ParabolaSpec(0.7, 0.3, 0.3, 3),
    8: ParabolaSpec(0.0, -0.4, -0.8, 3),
}

CSV_HEADER = ("branch", "x", "y", "residual", "component")


def fmt_exact(v: float) -> str:
    """Shortest text that round-trips to the same double, at most 17 digits."""
    return "%.17g" % v


def fmt_short(v: float) -> str:
    return "%.6g" % v


def _num(v: float) -> str:
    s = "%.6f" % v
    s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


@dataclass
class RenderScene:
    """Everything drawn for one parabola, in disk coordinates."""

    y0: float
    focus: tuple[float, float]
    loci: list = field(default_factory=list)
    cloud: np.ndarray | None = None
    title: str = ""
    pixels: int = PIXELS

    def __post_init__(self) -> None:
        self.loci = [np.asarray(c, dtype=float).reshape(-1, 2) for c in self.loci]
        for c in self.loci:
            if len(c) and not np.all(np.hypot(c[:, 0], c[:, 1]) < 1.0):
                raise ValueError("locus points must lie inside the unit circle")

    @classmethod
    def from_locus(cls, locus, cloud=None, title: str = "") -> "RenderScene":
        spec = locus.spec
        return cls(spec.y0, spec.focus, list(locus.components), cloud, title)

    @property
    def directrix(self) -> tuple[tuple[float, float], tuple[float, float]]:
        w = math.sqrt((1.0 - self.y0) * (1.0 + self.y0))
        return (-w, self.y0), (w, self.y0)

    def to_pixel(self, x: float, y: float) -> tuple[float, float]:
        """Map disk coordinates to pixels, origin top left, y downwards."""
        scale = self.pixels / 2.1
        return (x + 1.05) * scale, (1.05 - y) * scale


def render_svg(scene: RenderScene) -> str:
    """Standalone SVG text; identical scenes give identical bytes."""
    (ax, ay), (bx, by) = scene.directrix
    fx, fy = scene.focus
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{scene.pixels}" height="{scene.pixels}" '
        f'viewBox="{VIEWBOX}">',
    ]
    if scene.title:
        out.append(f"<title>{scene.title}</title>")
    out.append('<g transform="scale(1,-1)" fill="none" stroke-linejoin="round" stroke-linecap="round">')
    out.append('<circle cx="0" cy="0" r="1" stroke="black" stroke-width="0.006"/>')
    out.append(
        f'<line x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(bx)}" y2="{_num(by)}" '
        'stroke="#1f77b4" stroke-width="0.006" stroke-dasharray="0.03 0.02"/>'
    )
    if scene.cloud is not None and len(scene.cloud):
        out.append('<g fill="#999999" stroke="none">')
        for x, y in np.asarray(scene.cloud, dtype=float):
            out.append(f'<circle cx="{_num(x)}" cy="{_num(y)}" r="0.004"/>')
        out.append("</g>")
    for comp in scene.loci:
        if len(comp) < 2:
            continue
        pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in comp)
        out.append(f'<polyline points="{pts}" stroke="#d62728" stroke-width="0.008"/>')
    out.append(f'<circle cx="{_num(fx)}" cy="{_num(fy)}" r="0.02" fill="black" stroke="none"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_svg(scene: RenderScene, path) -> None:
    text = render_svg(scene)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write SVG to {path}: {exc.strerror or exc}") from exc


def locus_rows(locus) -> list[tuple]:
    """``(branch, x, y, residual, component)`` rows of a traced locus."""
    rows = []
    y0 = locus.spec.y0
    for idx, (comp, res) in enumerate(zip(locus.components, locus.residuals)):
        for (x, y), r in zip(comp, res):
            branch = "below" if y < y0 else "above" if y > y0 else "on"
            rows.append((branch, float(x), float(y), float(r), idx))
    return rows


def render_csv(locus) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for branch, x, y, r, idx in locus_rows(locus):
        writer.writerow((branch, fmt_exact(x), fmt_exact(y), fmt_exact(r), idx))
    return buf.getvalue()


def read_csv_points(text: str) -> np.ndarray:
    """Points of a CSV produced by :func:`render_csv` (needs ``x`` and ``y`` columns)."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or not {"x", "y"} <= set(reader.fieldnames):
        raise ValueError("CSV must have a header with x and y columns")
    pts = [(float(row["x"]), float(row["y"])) for row in reader]
    return np.array(pts, dtype=float).reshape(-1, 2)
