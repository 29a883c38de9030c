"""The ambidextrous sofa: a three-phase rotation path with one critical angle.

Everything is available in closed form. A numeric pipeline that mirrors the
Gerver solver (linear solve for 12 coefficients, 1-D Newton on ``beta``)
serves as an independent check on the radicals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from .geometry import HALF_PI
from .numerics import find_root_nd, quadrature, solve_linear
from .odes import CASE_GAMMA, SolutionCoefficients, sol_eval
from .paths import Family, PathSegment, RotationPath, contact_points, contact_velocities

SQRT2 = math.sqrt(2.0)
QUARTER_PI = 0.25 * math.pi
BETA_START = math.pi / 8

LINEAR_NAMES = (
    "kappa11", "kappa12", "a1", "a2",
    "kappa61", "kappa62", "f1", "f2",
    "kappa51", "kappa52", "e1", "e2",
)
LINEAR_EQUATIONS = (
    "sym1", "sym2", "sym3", "anchor1", "anchor2", "anchor3",
    "cont12.x", "cont12.y", "diff12.x", "diff12.y", "cont23.x", "cont23.y",
)
REDUNDANT_EQUATIONS = (
    "diff23.x", "diff23.y", "contactB.x", "contactB.y", "contactD.x", "contactD.y",
)
_FAMILY = (1, 6, 5)


def cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


@dataclass(frozen=True)
class AmbiParams:
    beta: float
    kappa11: float
    kappa12: float
    a1: float
    a2: float
    kappa61: float
    kappa62: float
    f1: float
    f2: float
    kappa51: float
    kappa52: float
    e1: float
    e2: float

    def __post_init__(self):
        if not 0.0 < self.beta < QUARTER_PI:
            raise ValueError(f"beta={self.beta} outside (0, pi/4)")

    @property
    def linear(self) -> Tuple[float, ...]:
        return tuple(getattr(self, n) for n in LINEAR_NAMES)

    @classmethod
    def from_linear(cls, beta: float, p) -> "AmbiParams":
        return cls(float(beta), *(float(v) for v in p))

    def coefficients(self, j: int) -> SolutionCoefficients:
        """Coefficients of SOL``j`` for ``j`` in (1, 6, 5)."""
        i = _FAMILY.index(j)
        return _coeffs(np.array(self.linear), i)

    def as_dict(self) -> Dict[str, float]:
        d = {"beta": self.beta}
        d.update(zip(LINEAR_NAMES, self.linear))
        return d

    def equations(self) -> Dict[str, float]:
        return {k: float(v) for k, v in _equations(np.array(self.linear), self.beta).items()}


@dataclass(frozen=True)
class AmbiMetrics:
    area_delta: float
    length_lambda: float
    beta: float

    def as_dict(self) -> Dict[str, float]:
        return {"area_delta": self.area_delta, "length_lambda": self.length_lambda, "beta": self.beta}


def ambi_closed_form() -> AmbiParams:
    """All 13 parameters from their radical expressions."""
    beta = math.atan(0.5 * (cbrt(SQRT2 + 1) - cbrt(SQRT2 - 1)))
    a1 = 0.25 / math.sin(beta)
    f1 = ((83 + cbrt(420619 + 15104 * SQRT2) + cbrt(420619 - 15104 * SQRT2)) ** 0.25
          / (3 * math.sqrt(2 * (2 - SQRT2))))
    return AmbiParams(
        beta=beta,
        kappa11=1 - a1, kappa12=0.5, a1=a1, a2=0.0,
        kappa61=1 - 4 * a1 / 3, kappa62=0.5, f1=f1, f2=-(SQRT2 - 1) * f1,
        kappa51=1 - 5 * a1 / 3, kappa52=0.5, e1=a1, e2=0.0,
    )


def a1_radical() -> float:
    """Second radical form of ``a1`` (no trigonometry)."""
    return 0.25 * math.sqrt(4 + cbrt(71 + 8 * SQRT2) + cbrt(71 - 8 * SQRT2))


def _coeffs(p, i) -> SolutionCoefficients:
    k = 4 * i
    return SolutionCoefficients((p[k], p[k + 1]), p[k + 2], p[k + 3])


def _x(p, i, t, order=0):
    return sol_eval(_FAMILY[i], _coeffs(p, i), t, order)


def _equations(p: np.ndarray, beta: float) -> Dict[str, float]:
    a1, a2, f1, f2, e1, e2 = p[2], p[3], p[6], p[7], p[10], p[11]
    eq = {
        "sym1": e1 - a1,
        "sym2": e2 + a2,
        "sym3": f2 - (1 - SQRT2) * f1,
        "anchor1": p[0] - (1 - a1),
        "anchor2": a2,
        "anchor3": p[1] - 0.5,
    }
    s = HALF_PI - beta
    # B and D are both in contact in the middle phase, so use SOL6 for them.
    mid_b = contact_points(_x(p, 1, beta), _x(p, 1, beta, 1), beta)["B"]
    mid_d = contact_points(_x(p, 1, s), _x(p, 1, s, 1), s)["D"]
    vec = {
        "cont12": _x(p, 0, beta) - _x(p, 1, beta),
        "diff12": _x(p, 0, beta, 1) - _x(p, 1, beta, 1),
        "cont23": _x(p, 1, s) - _x(p, 2, s),
        "diff23": _x(p, 1, s, 1) - _x(p, 2, s, 1),
        "contactB": _x(p, 0, beta) - mid_b,
        "contactD": _x(p, 2, s) - mid_d,
    }
    for name, v in vec.items():
        eq[name + ".x"] = v[0]
        eq[name + ".y"] = v[1]
    m = np.array([math.cos(beta), math.sin(beta)])
    eq["contact3"] = float(_x(p, 0, beta, 1) @ m)
    return eq


def linear_system(beta: float) -> Tuple[np.ndarray, np.ndarray]:
    zero = np.zeros(12)
    r0 = np.array([_equations(zero, beta)[n] for n in LINEAR_EQUATIONS])
    M = np.empty((12, 12))
    for j in range(12):
        e = zero.copy()
        e[j] = 1.0
        M[:, j] = np.array([_equations(e, beta)[n] for n in LINEAR_EQUATIONS]) - r0
    return M, -r0


def assemble_ambi_residual(beta: float) -> Tuple[np.ndarray, float]:
    """Linear parameters for fixed ``beta`` and the remaining scalar residual."""
    if not 0.0 < beta < QUARTER_PI:
        raise ValueError(f"beta={beta} outside (0, pi/4)")
    M, rhs = linear_system(beta)
    p = solve_linear(M, rhs)
    return p, _equations(p, beta)["contact3"]


def reduced_beta_equation(beta: float) -> float:
    """The trigonometric form of the remaining equation in ``beta``."""
    h = 0.5 * beta
    return (3 * math.sin(h) + math.sin(3 * h)
            + (SQRT2 - 1) * (-3 * math.cos(h) + math.cos(3 * h)))


def solve_ambi_numeric(start: float = BETA_START, tol: float = 1e-15) -> AmbiParams:
    """Linear solve for the 12 coefficients, then 1-D Newton on ``beta``."""
    def F(v):
        return np.array([assemble_ambi_residual(float(v[0]))[1]])

    beta = float(find_root_nd(F, [start], tol=tol)[0])
    p, _ = assemble_ambi_residual(beta)
    return AmbiParams.from_linear(beta, p)


def redundancy_residuals(params: AmbiParams) -> Dict[str, float]:
    eqs = params.equations()
    return {k: eqs[k] for k in REDUNDANT_EQUATIONS}


PHASE_GAMMA = (CASE_GAMMA[1], CASE_GAMMA[6], CASE_GAMMA[5])


def ambi_rotation_path(params: AmbiParams) -> RotationPath:
    b = params.beta
    bounds = (0.0, b, HALF_PI - b, HALF_PI)
    segs = [
        PathSegment(Family(j), params.coefficients(j), bounds[i], bounds[i + 1], PHASE_GAMMA[i])
        for i, j in enumerate(_FAMILY)
    ]
    return RotationPath(segs, name="ambidextrous")


def _integrand(path: RotationPath, kind: str):
    """Height above y = 1/2 times horizontal speed along one upper-boundary piece.

    The upper-right quarter of the shape is bounded by A, then the mirror
    image of B, then the mirror image of x; all are traversed right to left.
    """
    def f(t):
        seg = path.segment_at(t)
        x, xp, xpp = seg.eval(t), seg.eval(t, 1), seg.eval(t, 2)
        if kind == "x":
            return (0.5 - x[1]) * -xp[0]
        pt = contact_points(x, xp, t)[kind]
        vel = contact_velocities(xp, xpp, t)[kind]
        if kind == "A":
            return (pt[1] - 0.5) * -vel[0]
        return (0.5 - pt[1]) * vel[0]
    return f


def compute_ambi_area(params: AmbiParams, tol: float = 1e-13) -> float:
    """Area of the symmetrized shape from contact-path integrals over one quarter.

    Each integral is split at the phase junctions so every panel sees a single
    analytic piece.
    """
    path = ambi_rotation_path(params)
    b = params.beta
    total = 0.0
    for kind in ("A", "B"):
        f = _integrand(path, kind)
        total += quadrature(f, b, HALF_PI - b, tol) + quadrature(f, HALF_PI - b, HALF_PI, tol)
    total += quadrature(_integrand(path, "x"), b, QUARTER_PI, tol)
    return 4.0 * total


def closed_form_area(beta: float) -> float:
    return cbrt(3 + 2 * SQRT2) + cbrt(3 - 2 * SQRT2) - 1 + beta


def compute_ambi_length(params: AmbiParams) -> float:
    return 8.0 * params.a1 / 3.0


def length_radical() -> float:
    return (2.0 / 3.0) * math.sqrt(4 + cbrt(71 + 8 * SQRT2) + cbrt(71 - 8 * SQRT2))


def ambi_metrics(params: AmbiParams) -> AmbiMetrics:
    return AmbiMetrics(compute_ambi_area(params), compute_ambi_length(params), params.beta)


def focal_points(params: AmbiParams) -> Tuple[np.ndarray, np.ndarray]:
    """Centres of the radius-1/2 arcs; mirror images across ``x = kappa61``."""
    f1 = np.array([1.0 - 2.0 * params.a1, 0.5])
    f2 = np.array([2.0 * params.kappa61 - f1[0], 0.5])
    return f1, f2
