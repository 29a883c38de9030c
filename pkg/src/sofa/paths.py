"""Rotation paths and the contact paths they induce.

A rotation path ``x(t)``, ``0 <= t <= pi/2``, is the position of the
hallway's inner corner in the sofa's frame while the hallway has turned by
``t``. It is stored as a list of analytic pieces, each tagged with the set of
walls (and possibly the corner) touching the shape on that interval.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence

import numpy as np

from .geometry import HALF_PI, mu, nu
from .odes import SolutionCoefficients, sol_eval

JUNCTION_GUARD = 1e-6
WELL_BEHAVED_TOL = -1e-9


class Family(Enum):
    SOL1 = 1
    SOL2 = 2
    SOL3 = 3
    SOL4 = 4
    SOL5 = 5
    SOL6 = 6
    SEMICIRCLE = 7
    CUSTOM = 0


@dataclass(frozen=True)
class PathSegment:
    family: Family
    coeffs: SolutionCoefficients
    t_lo: float
    t_hi: float
    gamma: FrozenSet[str] = frozenset()
    func: Optional[Callable[[float, int], np.ndarray]] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.t_lo < self.t_hi:
            raise ValueError(f"empty segment [{self.t_lo}, {self.t_hi}]")
        object.__setattr__(self, "gamma", frozenset(self.gamma))
        if self.family is Family.CUSTOM and self.func is None:
            raise ValueError("custom segments need an evaluation function")

    def eval(self, t: float, order: int = 0) -> np.ndarray:
        if self.family is Family.CUSTOM:
            return np.asarray(self.func(t, order), dtype=float)
        return sol_eval(self.family.value, self.coeffs, t, order)


@dataclass(frozen=True)
class ContactState:
    t: float
    x: Optional[np.ndarray]
    A: Optional[np.ndarray]
    B: Optional[np.ndarray]
    C: Optional[np.ndarray]
    D: Optional[np.ndarray]
    gamma: FrozenSet[str]

    def point(self, name: str) -> Optional[np.ndarray]:
        return getattr(self, name)


class RotationPath:
    """Piecewise-analytic rotation path covering ``[0, pi/2]``."""

    def __init__(self, segments: Sequence[PathSegment], name: str = "path",
                 check: bool = True, smooth_tol: float = 1e-9):
        self.segments: List[PathSegment] = list(segments)
        self.name = name
        if not self.segments:
            raise ValueError("a rotation path needs at least one segment")
        if abs(self.segments[0].t_lo) > 1e-15 or abs(self.segments[-1].t_hi - HALF_PI) > 1e-12:
            raise ValueError("segments must cover [0, pi/2]")
        for a, b in zip(self.segments, self.segments[1:]):
            if abs(a.t_hi - b.t_lo) > 1e-15:
                raise ValueError(f"gap or overlap at t={a.t_hi}")
        self._breaks = [s.t_hi for s in self.segments[:-1]]
        if check:
            x0 = self.segments[0].eval(0.0)
            if np.max(np.abs(x0)) > 1e-10:
                raise ValueError(f"rotation path must start at the origin, got {x0}")
            for a, b in zip(self.segments, self.segments[1:]):
                t = a.t_hi
                if np.max(np.abs(a.eval(t) - b.eval(t))) > 1e-10:
                    raise ValueError(f"path is discontinuous at t={t}")
        self.smooth_tol = smooth_tol

    @property
    def junctions(self) -> List[float]:
        return list(self._breaks)

    @property
    def breakpoints(self) -> List[float]:
        return [0.0] + self._breaks + [HALF_PI]

    def segment_index(self, t: float, side: str = "left") -> int:
        """Index of the segment used at ``t``; junctions resolve from ``side``."""
        if side == "left":
            return bisect.bisect_left(self._breaks, t)
        return bisect.bisect_right(self._breaks, t)

    def segment_at(self, t: float, side: str = "left") -> PathSegment:
        return self.segments[self.segment_index(t, side)]

    def gamma_at(self, t: float) -> FrozenSet[str]:
        return self.segment_at(t, side="right").gamma

    def is_c1(self, tol: float = 1e-9) -> bool:
        return all(np.max(np.abs(a.eval(a.t_hi, 1) - b.eval(a.t_hi, 1))) <= tol
                   for a, b in zip(self.segments, self.segments[1:]))

    def near_junction(self, t: float, guard: float = JUNCTION_GUARD) -> bool:
        return any(abs(t - b) < guard for b in self._breaks)

    def __repr__(self):
        return f"RotationPath({self.name!r}, {len(self.segments)} segments)"


def eval_path(path: RotationPath, t: float, order: int = 0, side: str = "left") -> np.ndarray:
    """``x(t)``, ``x'(t)`` or ``x''(t)``.

    At a junction the segment on the left is used, so second derivatives
    there are one-sided limits from below.
    """
    if not -1e-12 <= t <= HALF_PI + 1e-12:
        raise ValueError(f"t={t} outside [0, pi/2]")
    if order not in (0, 1, 2):
        raise ValueError("order must be 0, 1 or 2")
    return path.segment_at(t, side).eval(t, order)


# --------------------------------------------------------------------------
# contact paths


def contact_points(x: np.ndarray, xp: np.ndarray, t: float) -> Dict[str, np.ndarray]:
    """The four wall contact points for corner position ``x`` and velocity ``xp``."""
    m, n = mu(t), nu(t)
    along_mu = xp @ m
    along_nu = xp @ n
    B = x + along_mu * n
    D = x - along_nu * m
    return {"A": B + m, "B": B, "C": D + n, "D": D}


def contact_velocities(xp: np.ndarray, xpp: np.ndarray, t: float) -> Dict[str, np.ndarray]:
    """Derivatives ``A'``, ``B'``, ``C'``, ``D'`` from ``x'`` and ``x''``."""
    m, n = mu(t), nu(t)
    B = xp + (xpp @ m + xp @ n) * n - (xp @ m) * m
    D = xp - (xpp @ n - xp @ m) * m - (xp @ n) * n
    return {"A": B + n, "B": B, "C": D - m, "D": D}


def contact_paths(path: RotationPath, t: float, side: str = "left") -> ContactState:
    """Contact points of every wall at angle ``t`` plus the declared contact set."""
    seg = path.segment_at(t, side)
    x = seg.eval(t, 0)
    pts = contact_points(x, seg.eval(t, 1), t)
    return ContactState(t, x, pts["A"], pts["B"], pts["C"], pts["D"], seg.gamma)


def contact_derivatives(path: RotationPath, t: float, side: str = "left") -> Dict[str, np.ndarray]:
    seg = path.segment_at(t, side)
    d = contact_velocities(seg.eval(t, 1), seg.eval(t, 2), t)
    d["x"] = seg.eval(t, 1)
    return d


def contact_path_point(path: RotationPath, name: str, t: float, side: str = "left",
                       order: int = 0) -> np.ndarray:
    seg = path.segment_at(t, side)
    if order == 0:
        if name == "x":
            return seg.eval(t)
        return contact_points(seg.eval(t), seg.eval(t, 1), t)[name]
    if name == "x":
        return seg.eval(t, 1)
    return contact_velocities(seg.eval(t, 1), seg.eval(t, 2), t)[name]


def _wall(path: RotationPath, name: str, t: float):
    """Normal and offset of the wall line that ``name`` touches at angle ``t``."""
    x = eval_path(path, t)
    normal = mu(t) if name in "AB" else nu(t)
    shift = 1.0 if name in "AC" else 0.0
    return normal, x @ normal + shift


def contact_paths_oracle(path: RotationPath, t: float, delta: float, name: str = "A") -> np.ndarray:
    """Contact point as the crossing of the wall lines at ``t`` and ``t + delta``.

    Independent of the closed-form formulas: it only uses ``x`` itself. Near
    ``pi/2`` the second line is taken at ``t - delta`` instead.

    Raises:
        ValueError: if ``delta`` is out of range or the two lines are parallel.
    """
    if not 0.0 < delta <= 1e-3:
        raise ValueError("delta must be in (0, 1e-3]")
    s = t + delta if t + delta <= HALF_PI else t - delta
    n1, c1 = _wall(path, name, t)
    n2, c2 = _wall(path, name, s)
    M = np.array([n1, n2])
    det = np.linalg.det(M)
    if abs(det) < 1e-14:
        raise ValueError("wall lines are parallel")
    return np.linalg.solve(M, np.array([c1, c2]))


# --------------------------------------------------------------------------
# well-behavedness


def check_well_behaved(path: RotationPath, t: float, gamma=None,
                       tol: float = WELL_BEHAVED_TOL) -> List[str]:
    """Names of the sign conditions violated at ``t`` (empty when well-behaved).

    ``gamma`` defaults to the contact set declared by the path at ``t``.
    """
    if gamma is None:
        gamma = path.gamma_at(t)
    m, n = mu(t), nu(t)
    d = contact_derivatives(path, t)
    checks = {
        "x.nu>=0": ("x", d["x"] @ n),
        "x.mu<=0": ("x", -(d["x"] @ m)),
        "A'.nu>=0": ("A", d["A"] @ n),
        "B'.nu<=0": ("B", -(d["B"] @ n)),
        "C'.mu<=0": ("C", -(d["C"] @ m)),
        "D'.mu>=0": ("D", d["D"] @ m),
    }
    return [label for label, (who, value) in checks.items() if who in gamma and value < tol]


# --------------------------------------------------------------------------
# simple paths


def hammersley_path(r: float) -> RotationPath:
    """Semicircular path ``r (cos 2t - 1, sin 2t)`` from (0, 0) to (-2r, 0)."""
    if not 0.0 <= r <= 1.0:
        raise ValueError("Hammersley radius must lie in [0, 1]")
    seg = PathSegment(Family.SEMICIRCLE, SolutionCoefficients((0.0, 0.0), r, 0.0), 0.0, HALF_PI,
                      frozenset("xABCD"))
    return RotationPath([seg], name=f"hammersley(r={r:g})")


def hammersley_area(r: float) -> float:
    return 0.5 * math.pi + r * (2.0 - 0.5 * math.pi * r)


def hammersley_contacts(r: float, t: float) -> Dict[str, np.ndarray]:
    """Closed-form contact points of the semicircular path.

    ``A`` sweeps the unit quarter-circle about the origin, ``C`` the one about
    ``(-2r, 0)``; ``B`` and ``D`` stay at the two inner corners.
    """
    s, c = math.sin(t), math.cos(t)
    return {"A": np.array([c, s]), "B": np.zeros(2),
            "C": np.array([-2.0 * r - s, c]), "D": np.array([-2.0 * r, 0.0])}


def custom_path(func: Callable[[float, int], np.ndarray], gamma="xABCD", name="custom",
                check: bool = True) -> RotationPath:
    seg = PathSegment(Family.CUSTOM, SolutionCoefficients(), 0.0, HALF_PI, frozenset(gamma), func)
    return RotationPath([seg], name=name, check=check)
