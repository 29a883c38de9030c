"""Constructive sofa shapes: sweep the hallway along a rotation path and clip.

The shape is the horizontal arm intersected with every sampled hallway copy
and with the final rotated vertical arm. Sampling angles are
``t_k = k pi / (2n)``, so doubling ``n`` only adds constraints and the polygon
area can only shrink.

Boundary attribution labels every polygon edge with the analytic curve it
follows (a contact path on one phase, possibly mirrored, or a wall line),
which lets :func:`area_by_boundary` recompute the area to quadrature accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .geometry import (
    ARM_LENGTH, HALF_PI, HalfPlane, HallwayRegion, Polygon, clip_all, clip_to_region,
    hausdorff, point_in_polygon, distance_to_polyline, polygon_area, reflect_half,
)
from .numerics import quadrature
from .paths import (
    RotationPath, contact_points, contact_velocities, hammersley_area, hammersley_path,
)

SQRT2 = math.sqrt(2.0)
AREA_BOUND = 2.0 * SQRT2


class DegeneratePathError(ValueError):
    pass


class OpenBoundaryError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    n_angles: int = 1024
    include_ends: bool = True

    def __post_init__(self):
        if self.n_angles < 8:
            raise ValueError("n_angles must be at least 8")

    def angles(self) -> np.ndarray:
        return np.arange(self.n_angles + 1) * (HALF_PI / self.n_angles)


@dataclass(frozen=True)
class BoundarySegment:
    """One attributed piece of the boundary, in counterclockwise order.

    ``source`` is a contact-path name ("A", "B", "C", "D", "x") or "wall".
    Curves carry the path phase (1-based) and the parameter range in the
    direction of traversal; walls carry their two end points.
    """

    source: str
    phase: Optional[int] = None
    reflected: bool = False
    t_start: Optional[float] = None
    t_end: Optional[float] = None
    start: Tuple[float, float] = (0.0, 0.0)
    end: Tuple[float, float] = (0.0, 0.0)
    edges: int = 0
    wall: Optional[str] = None
    first: int = 0

    @property
    def is_curve(self) -> bool:
        return self.source != "wall"

    @property
    def label(self) -> str:
        if not self.is_curve:
            return f"wall[{self.wall}]"
        name = f"rho({self.source})" if self.reflected else self.source
        return f"{name}[{self.phase}]"


@dataclass(frozen=True)
class SofaShape:
    polygon: Polygon
    area_polygon: float
    n_angles: int
    path: Optional[RotationPath] = None
    constraints: Tuple = ()
    symmetric: bool = False
    boundary_segments: Tuple[BoundarySegment, ...] = ()
    area_boundary: Optional[float] = None
    flags: Tuple[int, ...] = ()

    @classmethod
    def from_polygon(cls, poly: Polygon, n_angles: int = 8) -> "SofaShape":
        return cls(poly, poly.area, n_angles)

    def with_boundary(self, segments, flags=()) -> "SofaShape":
        return replace(self, boundary_segments=tuple(segments), flags=tuple(flags))

    def segment_vertices(self, seg: BoundarySegment) -> np.ndarray:
        v = self.polygon.vertices
        return v[(seg.first + np.arange(seg.edges + 1)) % len(v)]


# --------------------------------------------------------------------------
# construction


def terminal_planes(corner_end) -> List[HalfPlane]:
    """Half-planes of ``x(pi/2) + R_{pi/2}(L_vert)``."""
    cx, cy = corner_end
    return [HalfPlane([-1.0, 0.0], 1.0 - cx), HalfPlane([0.0, -1.0], -cy),
            HalfPlane([0.0, 1.0], cy + 1.0)]


def initial_region() -> Polygon:
    return Polygon.box(-ARM_LENGTH, 0.0, 1.0, 1.0)


def build_shape(path: RotationPath, cfg: SweepConfig = SweepConfig()) -> SofaShape:
    """Intersect the horizontal arm with the swept hallway copies.

    Raises:
        DegeneratePathError: if nothing of positive area survives.
    """
    pieces = [initial_region()]
    constraints = []
    for t in cfg.angles():
        h = HallwayRegion(path.segment_at(t).eval(t), float(t))
        for region in h.regions():
            pieces = clip_all(pieces, region)
            constraints.append(region)
        if not pieces:
            raise DegeneratePathError(f"shape became empty at t={t}")
    if cfg.include_ends:
        for hp in terminal_planes(path.segment_at(HALF_PI).eval(HALF_PI)):
            pieces = clip_all(pieces, hp)
            constraints.append(hp)
    if not pieces:
        raise DegeneratePathError("shape is empty after the terminal constraint")
    poly = max(pieces, key=polygon_area)
    return SofaShape(poly, poly.area, cfg.n_angles, path, tuple(constraints))


def _edge_planes(poly: Polygon) -> List[HalfPlane]:
    v = poly.vertices
    d = np.roll(v, -1, axis=0) - v
    cross = d[:, 0] * np.roll(d[:, 1], -1) - d[:, 1] * np.roll(d[:, 0], -1)
    if np.any(cross < -1e-12):
        raise ValueError("shape has no stored constraints and is not convex")
    planes = []
    for p, e in zip(v, d):
        n = np.array([e[1], -e[0]]) / np.hypot(*e)
        planes.append(HalfPlane(n, float(p @ n)))
    return planes


def symmetrize_ambidextrous(shape: SofaShape) -> SofaShape:
    """``S`` intersected with its mirror image across y = 1/2.

    The mirror image is described by reflecting every constraint that built
    ``S``; plain convex polygons use their edge half-planes.
    """
    constraints = shape.constraints or tuple(_edge_planes(shape.polygon))
    pieces = [shape.polygon]
    for region in constraints:
        pieces = clip_all(pieces, region.transformed(True))
        if not pieces:
            raise DegeneratePathError("symmetrized shape is empty")
    poly = max(pieces, key=polygon_area)
    return SofaShape(poly, poly.area, shape.n_angles, shape.path, shape.constraints, True)


def hammersley_family(r: float) -> Tuple[RotationPath, float]:
    return hammersley_path(r), hammersley_area(r)


# --------------------------------------------------------------------------
# generators for attribution


@dataclass(frozen=True)
class _Generator:
    source: str
    phase: Optional[int]
    reflected: bool
    ts: np.ndarray
    pts: np.ndarray
    wall: Optional[str] = None


def _curve_samples(path: RotationPath, name: str, seg_index: int, m: int):
    seg = path.segments[seg_index]
    ts = np.linspace(seg.t_lo, seg.t_hi, m)
    pts = np.empty((m, 2))
    for i, t in enumerate(ts):
        x, xp = seg.eval(t), seg.eval(t, 1)
        pts[i] = x if name == "x" else contact_points(x, xp, t)[name]
    return ts, pts


def _generators(path: RotationPath, symmetric: bool, m: int = 400) -> List[_Generator]:
    gens = []
    for i, seg in enumerate(path.segments):
        for name in "xABCD":
            if name not in seg.gamma:
                continue
            ts, pts = _curve_samples(path, name, i, m)
            if np.max(np.linalg.norm(pts - pts[0], axis=1)) < 1e-9:
                continue  # a fixed point, not a curve
            gens.append(_Generator(name, i + 1, False, ts, pts))
            if symmetric:
                gens.append(_Generator(name, i + 1, True, ts, reflect_half(pts)))
    xe = path.segment_at(HALF_PI).eval(HALF_PI)
    far = ARM_LENGTH
    walls = {
        "y=0": [(-far, 0.0), (far, 0.0)],
        "y=1": [(-far, 1.0), (far, 1.0)],
        "x=1": [(1.0, -far), (1.0, far)],
        "x=end": [(xe[0] - 1.0, -far), (xe[0] - 1.0, far)],
    }
    for key, pts in walls.items():
        gens.append(_Generator("wall", None, False, np.array([0.0, 1.0]), np.array(pts), key))
    return gens


def _nearest_on(points: np.ndarray, gen: _Generator, reach: float = np.inf):
    """Distance to the generator polyline and the parameter of the foot point.

    Points farther than ``reach`` from the generator's bounding box get an
    infinite distance without the full search.
    """
    s0, s1 = gen.pts[:-1], gen.pts[1:]
    d = s1 - s0
    dd = np.einsum("ij,ij->i", d, d)
    dd = np.where(dd == 0, 1.0, dd)
    dist = np.full(len(points), np.inf)
    par = np.full(len(points), np.nan)
    lo, hi = gen.pts.min(axis=0) - reach, gen.pts.max(axis=0) + reach
    near = np.flatnonzero(np.all((points >= lo) & (points <= hi), axis=1))
    for idx in np.array_split(near, max(1, len(near) // 256)):
        if len(idx) == 0:
            continue
        rel = points[idx, None, :] - s0[None, :, :]
        tau = np.clip(np.einsum("kmj,mj->km", rel, d) / dd, 0.0, 1.0)
        foot = s0[None] + tau[..., None] * d[None]
        dm = np.linalg.norm(points[idx, None, :] - foot, axis=2)
        j = np.argmin(dm, axis=1)
        dist[idx] = dm[np.arange(len(idx)), j]
        tj = tau[np.arange(len(idx)), j]
        par[idx] = gen.ts[j] + tj * (gen.ts[j + 1] - gen.ts[j])
    return dist, par


def _runs(labels: np.ndarray) -> List[Tuple[int, int]]:
    """Maximal cyclic runs ``(start, length)`` of equal labels.

    The run containing index 0 comes first (it may start before 0 and wrap).
    """
    n = len(labels)
    starts = [i for i in range(n) if labels[i] != labels[i - 1]]
    if not starts:
        return [(0, n)]
    out = []
    for k, s in enumerate(starts):
        e = starts[(k + 1) % len(starts)]
        out.append((s, (e - s) % n or n))
    if starts[0] != 0:
        out.insert(0, out.pop())
    return out


def _smooth(labels: np.ndarray, dist: np.ndarray, edge_len: np.ndarray,
            min_len: float) -> np.ndarray:
    """Reassign runs shorter than ``min_len`` to the closer of their two neighbours.

    Spurious runs are a few short edges near a junction where a third curve
    passes close by; wall runs are long single edges and survive.
    """
    labels = labels.copy()
    n = len(labels)
    for _ in range(200):
        runs = _runs(labels)
        if len(runs) < 3:
            break
        short = []
        for start, length in runs:
            total = edge_len[(start + np.arange(length)) % n].sum()
            if total < min_len:
                short.append((total, start, length))
        if not short:
            break
        _, start, length = min(short)
        idx = (start + np.arange(length)) % n
        left, right = labels[(start - 1) % n], labels[(start + length) % n]
        for i in idx:
            labels[i] = left if dist[i, left] <= dist[i, right] else right
    return labels


def _snap(t: float, breaks: Sequence[float], tol: float) -> float:
    b = min(breaks, key=lambda s: abs(s - t))
    return b if abs(b - t) <= tol else t


def attribute_boundary(shape: SofaShape, path: Optional[RotationPath] = None,
                       threshold: Optional[float] = None,
                       min_len: Optional[float] = None) -> SofaShape:
    """Label the polygon edges with analytic generators and merge them into segments.

    Each edge is assigned to the nearest generator (contact path on one phase,
    its mirror image for symmetrized shapes, or a wall line) when it lies
    within ``threshold`` (default ``3 / n_angles``); farther edges are flagged.
    Runs shorter than ``min_len`` (default ``4 / n_angles``) are absorbed by a
    neighbour. Curve end parameters are snapped to the path's phase boundaries.
    """
    path = path or shape.path
    if path is None:
        raise ValueError("attribution needs the rotation path")
    n = shape.n_angles
    threshold = 3.0 / n if threshold is None else threshold
    v = shape.polygon.vertices
    # start at the rightmost vertex, preferring the one nearest y = 1/2
    xmax = v[:, 0].max()
    cand = np.flatnonzero(v[:, 0] >= xmax - 1e-9)
    first = int(cand[np.argmin(np.abs(v[cand, 1] - 0.5))])
    v = np.roll(v, -first, axis=0)
    mids = 0.5 * (v + np.roll(v, -1, axis=0))

    gens = _generators(path, shape.symmetric)
    dist = np.empty((len(mids), len(gens)))
    for g, gen in enumerate(gens):
        dist[:, g] = _nearest_on(mids, gen, reach=10.0 * threshold)[0]
    labels = np.argmin(dist, axis=1)
    best = dist[np.arange(len(mids)), labels]
    flags = tuple(int(i) for i in np.flatnonzero(best > threshold))
    edge_len = np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1)
    labels = _smooth(labels, dist, edge_len, 4.0 / n if min_len is None else min_len)

    breaks = path.breakpoints
    snap_tol = 5.0 / n
    segments = []
    for start, length in _runs(labels):
        g = gens[labels[start]]
        last = (start + length - 1) % len(v)
        p0, p1 = v[start], v[(last + 1) % len(v)]
        if g.source == "wall":
            segments.append(BoundarySegment("wall", start=tuple(p0), end=tuple(p1), edges=length,
                                            wall=g.wall, first=int(start)))
            continue
        # parameter at the run's end vertices via their nearest foot points
        _, t_ends = _nearest_on(np.array([p0, p1]), g)
        t0 = _snap(float(t_ends[0]), breaks, snap_tol)
        t1 = _snap(float(t_ends[1]), breaks, snap_tol)
        segments.append(BoundarySegment(g.source, g.phase, g.reflected, t0, t1,
                                        tuple(p0), tuple(p1), length, first=int(start)))
    # store the polygon starting at the rightmost vertex so ``first`` indexes it
    return replace(shape, polygon=Polygon(v)).with_boundary(segments, flags)


def curve_point(path: RotationPath, seg: BoundarySegment, t: float, order: int = 0) -> np.ndarray:
    """Point (or velocity) of an attributed curve segment at parameter ``t``."""
    ps = path.segments[seg.phase - 1]
    x, xp = ps.eval(t), ps.eval(t, 1)
    if order == 0:
        p = x if seg.source == "x" else contact_points(x, xp, t)[seg.source]
        return reflect_half(p) if seg.reflected else p
    if seg.source == "x":
        d = xp
    else:
        d = contact_velocities(xp, ps.eval(t, 2), t)[seg.source]
    return np.array([d[0], -d[1]]) if seg.reflected else d


def segment_endpoints(path: RotationPath, seg: BoundarySegment):
    if seg.is_curve:
        return curve_point(path, seg, seg.t_start), curve_point(path, seg, seg.t_end)
    return np.array(seg.start), np.array(seg.end)


def area_by_boundary(shape: SofaShape, path: Optional[RotationPath] = None,
                     tol: float = 1e-12, gap_tol: float = 1e-6) -> float:
    """Green's theorem ``\\oint x dy`` over the attributed analytic segments.

    Wall segments take their end points from the neighbouring curves, so the
    chain is closed exactly whenever consecutive curves meet.

    Raises:
        OpenBoundaryError: if there are no segments, flagged edges, or
            consecutive curve ends more than ``gap_tol`` apart.
    """
    path = path or shape.path
    segs = list(shape.boundary_segments)
    if not segs:
        raise OpenBoundaryError("shape has no attributed boundary")
    if shape.flags:
        raise OpenBoundaryError(f"{len(shape.flags)} boundary edges are unattributed")
    k = len(segs)
    ends = [segment_endpoints(path, s) if s.is_curve else None for s in segs]
    for i, s in enumerate(segs):
        if not s.is_curve:
            prev = ends[(i - 1) % k]
            nxt = ends[(i + 1) % k]
            a = prev[1] if prev is not None else np.array(s.start)
            b = nxt[0] if nxt is not None else np.array(s.end)
            ends[i] = (a, b)
    for i in range(k):
        gap = np.linalg.norm(ends[i][1] - ends[(i + 1) % k][0])
        if gap > gap_tol:
            raise OpenBoundaryError(
                f"gap of {gap:.3e} between {segs[i].label} and {segs[(i + 1) % k].label}")
    total = 0.0
    for s, (a, b) in zip(segs, ends):
        if not s.is_curve:
            total += 0.5 * (a[0] + b[0]) * (b[1] - a[1])
            continue
        lo, hi = sorted((s.t_start, s.t_end))
        sign = 1.0 if s.t_end >= s.t_start else -1.0

        def f(t, s=s):
            return curve_point(path, s, t)[0] * curve_point(path, s, t, 1)[1]

        total += sign * quadrature(f, lo, hi, tol)
    return float(total)


def with_boundary_area(shape: SofaShape, path: Optional[RotationPath] = None) -> SofaShape:
    return replace(shape, area_boundary=area_by_boundary(shape, path))


def circle_merged_count(shape: SofaShape, centres, radius: float = 0.5, tol: float = 1e-9,
                        samples: int = 16) -> int:
    """Number of segments after merging neighbours that lie on a common circle."""
    path = shape.path
    segs = shape.boundary_segments

    def circle_of(s):
        if not s.is_curve:
            return None
        ts = np.linspace(s.t_start, s.t_end, samples)
        pts = np.array([curve_point(path, s, t) for t in ts])
        for i, c in enumerate(centres):
            if np.max(np.abs(np.linalg.norm(pts - c, axis=1) - radius)) <= tol:
                return i
        return None

    tags = [circle_of(s) for s in segs]
    k = len(segs)
    merges = sum(1 for i in range(k) if tags[i] is not None and tags[i] == tags[(i + 1) % k])
    return k - merges


# --------------------------------------------------------------------------
# diagnostics


def mirror_lr(v: np.ndarray, axis_x: float) -> np.ndarray:
    out = v.copy()
    out[:, 0] = 2 * axis_x - out[:, 0]
    return out[::-1]


def symmetry_errors(shape: SofaShape, axis_x: float) -> Tuple[float, float]:
    """Hausdorff distances to the left-right and the up-down mirror images."""
    v = shape.polygon.vertices
    lr = hausdorff(v, mirror_lr(v, axis_x))
    ud = hausdorff(v, reflect_half(v)[::-1])
    return lr, ud


def containment_error(shape: SofaShape, samples: int = 50) -> float:
    """Largest distance from an attributed curve sample to the polygon, if outside it."""
    worst = 0.0
    v = shape.polygon.vertices
    for s in shape.boundary_segments:
        if not s.is_curve:
            continue
        for t in np.linspace(s.t_start, s.t_end, samples):
            p = curve_point(shape.path, s, t)
            if not point_in_polygon(p, shape.polygon):
                worst = max(worst, float(distance_to_polyline(p[None], v)[0]))
    return worst


def segment_summary(shape: SofaShape) -> List[str]:
    return [s.label for s in shape.boundary_segments]


__all__ = [
    "SweepConfig", "SofaShape", "BoundarySegment", "build_shape", "symmetrize_ambidextrous",
    "hammersley_family", "attribute_boundary", "area_by_boundary", "with_boundary_area",
    "circle_merged_count", "symmetry_errors", "containment_error", "DegeneratePathError",
    "OpenBoundaryError", "terminal_planes", "clip_to_region", "segment_summary",
]
