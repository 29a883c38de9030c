"""SVG and CSV output for shapes, and SVG frames of the hallway sweep.

All numbers are printed with fixed formats so identical inputs give
byte-identical files.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .geometry import HALF_PI, rotation
from .paths import RotationPath
from .shape import SofaShape

# Outline of L in hallway coordinates, arms cut off after ``_ARM`` units.
_ARM = 4.0
_L_OUTLINE = np.array([
    [-_ARM, 0.0], [0.0, 0.0], [0.0, -_ARM], [1.0, -_ARM], [1.0, 1.0], [-_ARM, 1.0],
])


@dataclass(frozen=True)
class RenderOptions:
    scale: float = 200.0
    margin: float = 0.25
    tick_length: float = 0.06
    stroke: float = 1.5
    fill: str = "#d8e4f0"
    palette: tuple = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(v: float) -> str:
    s = f"{v:.4f}"
    return "0.0000" if s == "-0.0000" else s


class _Canvas:
    def __init__(self, xmin, ymin, xmax, ymax, opts: RenderOptions):
        self.x0, self.y1 = xmin - opts.margin, ymax + opts.margin
        self.w = (xmax - xmin + 2 * opts.margin) * opts.scale
        self.h = (ymax - ymin + 2 * opts.margin) * opts.scale
        self.s = opts.scale

    def coords(self, p):
        return _fmt((p[0] - self.x0) * self.s), _fmt((self.y1 - p[1]) * self.s)

    def xy(self, p) -> str:
        return ",".join(self.coords(p))

    def points(self, pts) -> str:
        return " ".join(self.xy(p) for p in pts)

    def header(self, attrs: str = "") -> str:
        return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'width="{_fmt(self.w)}" height="{_fmt(self.h)}" '
                f'viewBox="0 0 {_fmt(self.w)} {_fmt(self.h)}"{attrs}>\n')


def _bounds(*arrays):
    pts = np.concatenate([a for a in arrays if len(a)])
    return pts[:, 0].min(), pts[:, 1].min(), pts[:, 0].max(), pts[:, 1].max()


def _ticks(shape: SofaShape, opts: RenderOptions) -> List[np.ndarray]:
    """Short outward strokes at the start of every attributed segment."""
    v = shape.polygon.vertices
    centre = v.mean(axis=0)
    out = []
    for seg in shape.boundary_segments:
        p = v[seg.first % len(v)]
        d = p - centre
        d = d / (np.hypot(*d) or 1.0)
        out.append(np.array([p - 0.5 * opts.tick_length * d, p + 0.5 * opts.tick_length * d]))
    return out


def render_svg(shape: SofaShape, path: Optional[str] = None,
               opts: RenderOptions = RenderOptions()) -> str:
    """SVG drawing of the shape; attributed segments get their own polylines and ticks."""
    v = shape.polygon.vertices
    c = _Canvas(*_bounds(v), opts)
    parts = [c.header(f' data-area="{shape.area_polygon:.12g}"'),
             f'<polygon class="shape" points="{c.points(v)}" fill="{opts.fill}" stroke="none"/>\n']
    if shape.boundary_segments:
        for k, seg in enumerate(shape.boundary_segments):
            colour = opts.palette[k % len(opts.palette)]
            parts.append(f'<polyline class="segment" data-label="{seg.label}" fill="none" '
                         f'stroke="{colour}" stroke-width="{opts.stroke}" '
                         f'points="{c.points(shape.segment_vertices(seg))}"/>\n')
        for a, b in _ticks(shape, opts):
            (x1, y1), (x2, y2) = c.coords(a), c.coords(b)
            parts.append(f'<line class="tick" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                         f'stroke="black" stroke-width="{opts.stroke}"/>\n')
    else:
        parts.append(f'<polygon class="outline" points="{c.points(v)}" fill="none" '
                     f'stroke="black" stroke-width="{opts.stroke}"/>\n')
    parts.append("</svg>\n")
    text = "".join(parts)
    if path is not None:
        _write(path, text)
    return text


def export_csv(shape: SofaShape, path: Optional[str] = None) -> str:
    """Polygon vertices as ``x,y`` rows with 12 significant digits."""
    lines = ["x,y"] + [f"{x:.12g},{y:.12g}" for x, y in shape.polygon.vertices]
    text = "\n".join(lines) + "\n"
    if path is not None:
        _write(path, text)
    return text


def hallway_outline(corner, t: float) -> np.ndarray:
    return np.asarray(corner) + _L_OUTLINE @ rotation(t).T


def frame_times(n_frames: int) -> np.ndarray:
    if n_frames < 1:
        raise ValueError("need at least one frame")
    if n_frames == 1:
        return np.zeros(1)
    return np.linspace(0.0, HALF_PI, n_frames)


def render_frame(path: RotationPath, t: float, shape: Optional[SofaShape] = None,
                 opts: RenderOptions = RenderOptions()) -> str:
    corner = path.segment_at(t).eval(t)
    hall = hallway_outline(corner, t)
    view = np.array([[-3.0, -2.0], [1.5, 2.0]])
    c = _Canvas(*_bounds(view), opts)
    parts = [c.header(f' data-t="{t:.12g}" data-corner="{corner[0]:.12g},{corner[1]:.12g}"')]
    if shape is not None:
        parts.append(f'<polygon class="shape" points="{c.points(shape.polygon.vertices)}" '
                     f'fill="{opts.fill}" stroke="black" stroke-width="{opts.stroke}"/>\n')
    parts.append(f'<polygon class="hallway" points="{c.points(hall)}" fill="none" '
                 f'stroke="#444444" stroke-width="{opts.stroke}"/>\n')
    cx, cy = c.coords(corner)
    parts.append(f'<circle class="corner" cx="{cx}" cy="{cy}" r="3" fill="#d62728"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)


def animation_frames(path: RotationPath, n_frames: int, out_dir: Optional[str] = None,
                     shape: Optional[SofaShape] = None,
                     opts: RenderOptions = RenderOptions()) -> List[str]:
    """One SVG per uniformly spaced angle, seen from the sofa's frame.

    Files are named ``frame_0000.svg`` and so on when ``out_dir`` is given.
    """
    frames = [render_frame(path, float(t), shape, opts) for t in frame_times(n_frames)]
    if out_dir is not None:
        os.makedirs(out_dir, exist_ok=True)
        for k, text in enumerate(frames):
            _write(os.path.join(out_dir, f"frame_{k:04d}.svg"), text)
    return frames


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
