"""Planar primitives: the rotating frame, the L-shaped hallway and polygon clipping.

Points are plain ``numpy`` arrays of shape ``(2,)``; polygons are ``(n, 2)``
vertex arrays wrapped in :class:`Polygon`. Hallway width is 1 throughout.

Clipping is a boundary walk (Weiler-Atherton style) against a region whose
boundary is one infinite polyline: a half-plane, or the complement of the
wedge behind the hallway's inner corner. In both cases the outside of the
region is an intersection of half-planes, so along any polygon edge the
outside part is a single parameter interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence

import numpy as np

HALF_PI = 0.5 * math.pi

# Arms of L are unbounded; the sofa has diameter < 3, so 16 is far enough.
ARM_LENGTH = 16.0

# Polygons below this area are treated as empty.
EMPTY_AREA = 1e-14

_FRAME_SLACK = 1e-12
_SNAP = 1e-12
_MIN_GAP = 1e-13


def vec(x: float, y: float) -> np.ndarray:
    p = np.array([x, y], dtype=float)
    if not np.all(np.isfinite(p)):
        raise ValueError(f"non-finite vector ({x}, {y})")
    return p


def rotation(t: float) -> np.ndarray:
    """Counterclockwise rotation matrix by angle ``t``."""
    c, s = math.cos(t), math.sin(t)
    return np.array([[c, -s], [s, c]])


def reflect_half(p) -> np.ndarray:
    """Reflect point(s) across the line y = 1/2."""
    q = np.array(p, dtype=float, copy=True)
    q[..., 1] = 1.0 - q[..., 1]
    return q


@dataclass(frozen=True)
class RotatingFrame:
    t: float
    mu: np.ndarray
    nu: np.ndarray


def frame_at(t: float) -> RotatingFrame:
    """Return the orthonormal frame ``mu = (cos t, sin t)``, ``nu = (-sin t, cos t)``.

    Raises:
        ValueError: if ``t`` is outside ``[0, pi/2]`` by more than 1e-12.
    """
    if not (-_FRAME_SLACK <= t <= HALF_PI + _FRAME_SLACK):
        raise ValueError(f"angle {t!r} outside [0, pi/2]")
    c, s = math.cos(t), math.sin(t)
    return RotatingFrame(t, np.array([c, s]), np.array([-s, c]))


def mu(t):
    return np.array([np.cos(t), np.sin(t)])


def nu(t):
    return np.array([-np.sin(t), np.cos(t)])


@dataclass(frozen=True)
class Polygon:
    """Simple polygon with counterclockwise vertices (possibly empty)."""

    vertices: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float).reshape(-1, 2)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_points(cls, pts: Iterable[Sequence[float]]) -> "Polygon":
        v = np.asarray(list(pts), dtype=float).reshape(-1, 2)
        if len(v) >= 3 and signed_area(v) < 0:
            v = v[::-1]
        return normalize(cls(v))

    @classmethod
    def box(cls, x0: float, y0: float, x1: float, y1: float) -> "Polygon":
        return cls(np.array([[x0, y0], [x1, y0], [x1, y1], [x0, y1]], dtype=float))

    @property
    def is_empty(self) -> bool:
        return len(self.vertices) < 3

    def __len__(self):
        return len(self.vertices)

    @property
    def area(self) -> float:
        return polygon_area(self)

    def reflected(self) -> "Polygon":
        """Mirror image across y = 1/2 (orientation restored to ccw)."""
        return Polygon(reflect_half(self.vertices)[::-1])


EMPTY = Polygon()


def signed_area(v: np.ndarray) -> float:
    if len(v) < 3:
        return 0.0
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(x[:-1] @ y[1:] - x[1:] @ y[:-1] + x[-1] * y[0] - x[0] * y[-1])


def polygon_area(poly: Polygon) -> float:
    """Shoelace area of a counterclockwise polygon (0 for the empty polygon)."""
    return signed_area(poly.vertices)


def normalize(poly: Polygon) -> Polygon:
    """Drop repeated vertices; collapse degenerate polygons to :data:`EMPTY`."""
    v = poly.vertices
    if len(v) >= 2:
        d = np.diff(v, axis=0, prepend=v[-1:])
        v = v[np.hypot(d[:, 0], d[:, 1]) > 1e-13]
    if len(v) < 3 or abs(signed_area(v)) < EMPTY_AREA:
        return EMPTY
    return Polygon(v)


def point_in_polygon(p, poly: Polygon) -> bool:
    """Even-odd ray test."""
    v = poly.vertices
    if len(v) < 3:
        return False
    x, y = p
    x0, y0 = v[:, 0], v[:, 1]
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    crosses = (y0 > y) != (y1 > y)
    with np.errstate(divide="ignore", invalid="ignore"):
        xs = x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    return bool(np.count_nonzero(crosses & (x < xs)) % 2)


# --------------------------------------------------------------------------
# regions bounded by a single polyline


class HalfPlane:
    """The closed half-plane ``<p, normal> <= offset``."""

    def __init__(self, normal, offset: float):
        self.normal = np.asarray(normal, dtype=float)
        self.offset = float(offset)
        # boundary direction with the region on its left
        self.direction = np.array([-self.normal[1], self.normal[0]])

    def constraint_values(self, p: np.ndarray) -> np.ndarray:
        """Shape (k, 1); a point is outside iff every column is positive."""
        return (p @ self.normal - self.offset)[:, None]

    def contains(self, p) -> bool:
        return bool(np.asarray(p) @ self.normal - self.offset <= _SNAP)

    def boundary_param(self, p: np.ndarray) -> np.ndarray:
        return p @ self.direction

    def boundary_vertices(self, s0: float, s1: float) -> np.ndarray:
        return np.zeros((0, 2))

    def transformed(self, reflect: bool) -> "HalfPlane":
        if not reflect:
            return self
        n = self.normal
        return HalfPlane([n[0], -n[1]], self.offset - n[1])


class WedgeComplement:
    """Everything except the open quarter-plane behind the hallway's inner corner.

    In the rotated hallway frame with the corner at the origin the excluded
    wedge is ``{x < 0, y < 0}``. With ``reflect=True`` the region is mirrored
    across y = 1/2.
    """

    def __init__(self, corner, t: float, reflect: bool = False):
        self.corner = np.asarray(corner, dtype=float)
        self.t = float(t)
        self.reflect = reflect
        e1, e2 = mu(t), nu(t)
        if reflect:
            # the mirrored frame is left-handed; swapping the axes keeps the
            # boundary walk oriented with the region on its left
            self.corner = reflect_half(self.corner)
            e1, e2 = np.array([e2[0], -e2[1]]), np.array([e1[0], -e1[1]])
        self.e1, self.e2 = e1, e2

    def _local(self, p):
        d = p - self.corner
        return d @ self.e1, d @ self.e2

    def constraint_values(self, p):
        a, b = self._local(p)
        return np.stack([-a, -b], axis=-1)

    def contains(self, p) -> bool:
        a, b = self._local(np.asarray(p, dtype=float))
        return bool(max(a, b) >= -_SNAP)

    def boundary_param(self, p):
        # (s, 0) for s < 0 along the first ray, (0, -s) for s > 0 along the second
        a, b = self._local(p)
        return a - b

    def boundary_vertices(self, s0: float, s1: float) -> np.ndarray:
        """The corner, if the boundary walk from ``s0`` to ``s1`` passes it."""
        if s0 < -_SNAP and s1 > _SNAP:
            return self.corner[None, :]
        return np.zeros((0, 2))

    def transformed(self, reflect: bool) -> "WedgeComplement":
        if not reflect:
            return self
        if self.reflect:
            return WedgeComplement(reflect_half(self.corner), self.t, False)
        return WedgeComplement(self.corner, self.t, True)


def _outside_interval(g0: np.ndarray, g1: np.ndarray):
    """Edge parameters in [0, 1] where every linear constraint is positive.

    ``g0``, ``g1`` have shape (edges, constraints); returns ``(lo, hi)``,
    empty when ``lo >= hi``.
    """
    dg = g1 - g0
    with np.errstate(divide="ignore", invalid="ignore"):
        root = np.where(dg != 0, -g0 / dg, 0.0)
    lo = np.where(g0 > 0, 0.0, np.where(dg > 0, root, 1.0))
    hi = np.where(g1 > 0, 1.0, np.where(dg < 0, root, 0.0))
    return np.clip(lo.max(axis=1), 0.0, 1.0), np.clip(hi.min(axis=1), 0.0, 1.0)


def clip_to_region(poly: Polygon, region) -> List[Polygon]:
    """Intersect a simple ccw polygon with ``region``; may return several pieces."""
    v = poly.vertices
    n = len(v)
    if n < 3:
        return []
    g = region.constraint_values(v)
    g = np.where(np.abs(g) <= _SNAP, 0.0, g)
    g_next = np.concatenate([g[1:], g[:1]])
    # an edge stays inside if both ends satisfy one common linear constraint
    candidates = np.flatnonzero(np.all(np.maximum(g, g_next) > 0, axis=1))
    if len(candidates) == 0:
        return [poly]
    outside = np.all(g > 0, axis=1)
    if np.all(outside):
        return []
    p1 = np.concatenate([v[1:], v[:1]])
    lo, hi = _outside_interval(g[candidates], g_next[candidates])
    edge_len = np.linalg.norm(p1[candidates] - v[candidates], axis=1)
    out_next = np.concatenate([outside[1:], outside[:1]])
    keep = ((hi - lo) * edge_len > _MIN_GAP) | outside[candidates] | out_next[candidates]
    if not np.any(keep):
        return [poly]
    lo_all = np.zeros(n)
    hi_all = np.zeros(n)
    lo_all[candidates], hi_all[candidates] = lo, hi
    lo, hi = lo_all, hi_all

    events = []  # (edge, tau, is_exit) in boundary order
    for i in candidates[keep]:
        if not outside[i]:
            events.append((int(i), float(lo[i]), True))
        if not out_next[i]:
            events.append((int(i), float(hi[i]), False))
    m = len(events)
    pts = np.array([v[i] + tau * (p1[i] - v[i]) for i, tau, _ in events])
    s = region.boundary_param(pts)

    entries = [k for k in range(m) if not events[k][2]]
    order = sorted(entries, key=lambda k: s[k])
    sorted_s = np.array([s[k] for k in order])

    visited = set()
    pieces = []
    for start in entries:
        if start in visited:
            continue
        out = []
        k = start
        for _ in range(m + 1):
            visited.add(k)
            nxt = (k + 1) % m
            if not events[nxt][2]:
                raise RuntimeError("clip events do not alternate")
            out.append(pts[k:k + 1])
            out.append(v[_between(events[k], events[nxt], n)])
            out.append(pts[nxt:nxt + 1])
            # follow the region boundary to the next entry
            j = int(np.searchsorted(sorted_s, s[nxt], side="right")) % len(order)
            k = order[j]
            out.append(region.boundary_vertices(s[nxt], s[k]))
            if k == start:
                break
        else:
            raise RuntimeError("clip walk did not close")
        piece = normalize(Polygon(np.concatenate(out)))
        if not piece.is_empty and signed_area(piece.vertices) > 0:
            pieces.append(piece)
    return pieces


def _between(ev0, ev1, n: int) -> np.ndarray:
    """Polygon vertex indices strictly between two boundary events."""
    i0, tau0, _ = ev0
    i1, tau1, _ = ev1
    if i1 == i0 and tau1 > tau0:
        return np.arange(0)
    count = (i1 - i0) % n or n
    return np.arange(i0 + 1, i0 + count + 1) % n


def clip_polygon_halfplane(poly: Polygon, normal, offset: float) -> Polygon:
    """Intersect a convex polygon with ``{p : <p, normal> <= offset}``.

    A convex input gives a single convex polygon, possibly empty.
    """
    pieces = clip_to_region(poly, HalfPlane(normal, offset))
    if not pieces:
        return EMPTY
    return max(pieces, key=polygon_area)


def clip_all(pieces: Sequence[Polygon], region) -> List[Polygon]:
    out = []
    for p in pieces:
        out.extend(clip_to_region(p, region))
    return out


# --------------------------------------------------------------------------
# hallway


@dataclass(frozen=True)
class HallwayRegion:
    """The hallway ``corner + R_angle(L)``, with L = L_horiz U L_vert."""

    corner: np.ndarray
    angle: float

    def __post_init__(self):
        object.__setattr__(self, "corner", np.asarray(self.corner, dtype=float))

    def local(self, p) -> np.ndarray:
        d = np.asarray(p, dtype=float) - self.corner
        return d @ rotation(self.angle)

    def outer_walls(self) -> List[HalfPlane]:
        m, n = mu(self.angle), nu(self.angle)
        return [HalfPlane(m, self.corner @ m + 1.0), HalfPlane(n, self.corner @ n + 1.0)]

    def regions(self, reflect: bool = False) -> list:
        rs = self.outer_walls() + [WedgeComplement(self.corner, self.angle)]
        return [r.transformed(reflect) for r in rs]

    def arm_pieces(self) -> List[List[HalfPlane]]:
        """Disjoint convex decomposition: the horizontal arm, then the rest of the vertical arm."""
        m, n = mu(self.angle), nu(self.angle)
        cm, cn = self.corner @ m, self.corner @ n
        horiz = [HalfPlane(m, cm + 1.0), HalfPlane(n, cn + 1.0), HalfPlane(-n, -cn),
                 HalfPlane(-m, -cm + ARM_LENGTH)]
        vert = [HalfPlane(-m, -cm), HalfPlane(m, cm + 1.0), HalfPlane(n, cn),
                HalfPlane(-n, -cn + ARM_LENGTH)]
        return [horiz, vert]


def hallway_contains(h: HallwayRegion, p) -> bool:
    x, y = h.local(p)
    in_horiz = x <= 1.0 and 0.0 <= y <= 1.0
    in_vert = 0.0 <= x <= 1.0 and y <= 1.0
    return bool(in_horiz or in_vert)


def intersect_with_hallway(poly: Polygon, h: HallwayRegion) -> List[Polygon]:
    """``poly`` intersected with the hallway, as disjoint simple polygons.

    The hallway is the intersection of its two outer-wall half-planes with
    the complement of the wedge behind the inner corner. Clipping against
    those three regions keeps every connected component as one polygon.
    """
    pieces = [poly]
    for region in h.regions():
        pieces = clip_all(pieces, region)
    return pieces


def intersect_with_arms(poly: Polygon, h: HallwayRegion) -> List[Polygon]:
    """Same point set as :func:`intersect_with_hallway`, split per convex arm.

    Only valid for convex ``poly``; arms are truncated at :data:`ARM_LENGTH`.
    """
    out = []
    for planes in h.arm_pieces():
        piece = poly
        for hp in planes:
            piece = clip_polygon_halfplane(piece, hp.normal, hp.offset)
            if piece.is_empty:
                break
        if not piece.is_empty:
            out.append(piece)
    return out


# --------------------------------------------------------------------------
# distances


def point_segment_distance(p: np.ndarray, s0: np.ndarray, s1: np.ndarray) -> np.ndarray:
    """Distances from points ``p`` (k, 2) to segments ``s0 -> s1`` (m, 2); shape (k, m)."""
    d = s1 - s0
    dd = np.einsum("ij,ij->i", d, d)
    dd = np.where(dd == 0, 1.0, dd)
    rel = p[:, None, :] - s0[None, :, :]
    tau = np.clip(np.einsum("kmj,mj->km", rel, d) / dd, 0.0, 1.0)
    foot = s0[None, :, :] + tau[..., None] * d[None, :, :]
    return np.linalg.norm(p[:, None, :] - foot, axis=2)


def distance_to_polyline(p: np.ndarray, line: np.ndarray, closed: bool = True) -> np.ndarray:
    """Distance from each point to an open or closed polyline."""
    s0 = line if closed else line[:-1]
    s1 = np.roll(line, -1, axis=0) if closed else line[1:]
    lo, hi = np.minimum(s0, s1), np.maximum(s0, s1)
    probe = line[::max(1, len(line) // 256)]
    out = np.empty(len(p))
    for idx in np.array_split(np.arange(len(p)), max(1, len(p) // 128)):
        q = p[idx]
        # any vertex bounds the answer; only segments within that reach can beat it
        d2 = ((q[:, None, :] - probe[None, :, :]) ** 2).sum(axis=2)
        reach = float(np.sqrt(d2.min(axis=1).max()))
        qlo, qhi = q.min(axis=0) - reach, q.max(axis=0) + reach
        near = np.all((hi >= qlo) & (lo <= qhi), axis=1)
        out[idx] = point_segment_distance(q, s0[near], s1[near]).min(axis=1)
    return out


def hausdorff(a: np.ndarray, b: np.ndarray) -> float:
    """Symmetric Hausdorff distance between two closed polygonal boundaries."""
    return max(float(distance_to_polyline(a, b).max()), float(distance_to_polyline(b, a).max()))
