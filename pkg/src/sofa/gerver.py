"""Gerver's sofa rederived from the optimality ODEs.

The rotation path is glued from five closed-form solution families. All
constraints are affine in the 20 coefficients (kappa_j, a_i, ..., e_i), so for
fixed critical angles (phi, theta) the coefficients come from a 20x20 linear
solve and only a 2-D Newton iteration on the angles remains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .geometry import HALF_PI
from .numerics import NewtonError, SingularMatrixError, find_root_nd, solve_linear
from .odes import CASE_GAMMA, SolutionCoefficients, sol_eval
from .paths import Family, PathSegment, RotationPath, contact_points

QUARTER_PI = 0.25 * math.pi
NEWTON_START = (0.1, 0.6)

# Order of the 20 linear unknowns.
LINEAR_NAMES = (
    "kappa11", "kappa12", "a1", "a2",
    "kappa21", "kappa22", "b1", "b2",
    "kappa31", "kappa32", "c1", "c2",
    "kappa41", "kappa42", "d1", "d2",
    "kappa51", "kappa52", "e1", "e2",
)

# Labels of the scalar equations, in assembly order.
LINEAR_EQUATIONS = (
    "sym1", "sym2", "sym3", "sym4", "sym5",
    "anchor1", "anchor2", "anchor3",
    "cont12.x", "cont12.y", "diff12.x", "diff12.y",
    "cont23.x", "cont23.y", "diff23.x", "diff23.y",
    "cont34.x", "cont34.y", "cont45.x", "cont45.y",
)
RESERVED_EQUATIONS = ("contact1.x", "contact1.y")
REDUNDANT_EQUATIONS = (
    "diff34.x", "diff34.y", "diff45.x", "diff45.y", "contact2.x", "contact2.y",
)


def _coeffs(p: np.ndarray, j: int) -> SolutionCoefficients:
    k = 4 * j
    return SolutionCoefficients((p[k], p[k + 1]), p[k + 2], p[k + 3])


def _x(p, j, t, order=0):
    """Value or derivative of solution family ``j + 1`` at ``t``."""
    return sol_eval(j + 1, _coeffs(p, j), t, order)


def _equations(p: np.ndarray, phi: float, theta: float) -> Dict[str, np.ndarray]:
    """All 28 scalar constraint residuals, grouped by label.

    Every entry is affine in ``p`` for fixed angles.
    """
    a1, a2, b1, b2, c1, c2, d1, d2, e1, e2 = (p[i] for i in (2, 3, 6, 7, 10, 11, 14, 15, 18, 19))
    q = QUARTER_PI
    eq = {
        "sym1": e1 - a1,
        "sym2": e2 + a2,
        "sym3": d1 - (q - b1),
        "sym4": d2 - (b2 + q * (2 * b1 - q)),
        "sym5": c2 - (c1 - HALF_PI),
        "anchor1": p[0] - (1 - a1),
        "anchor2": p[1] - 0.25,
        "anchor3": a2 + 0.25,
    }
    s, r = HALF_PI - theta, HALF_PI - phi
    vec = {
        "cont12": _x(p, 0, phi) - _x(p, 1, phi),
        "diff12": _x(p, 0, phi, 1) - _x(p, 1, phi, 1),
        "cont23": _x(p, 1, theta) - _x(p, 2, theta),
        "diff23": _x(p, 1, theta, 1) - _x(p, 2, theta, 1),
        "cont34": _x(p, 2, s) - _x(p, 3, s),
        "diff34": _x(p, 2, s, 1) - _x(p, 3, s, 1),
        "cont45": _x(p, 3, r) - _x(p, 4, r),
        "diff45": _x(p, 3, r, 1) - _x(p, 4, r, 1),
        # B is in contact during phase 4, D during phases 1-2.
        "contact1": _x(p, 0, phi) - contact_points(_x(p, 3, s), _x(p, 3, s, 1), s)["B"],
        "contact2": _x(p, 4, r) - contact_points(_x(p, 1, theta), _x(p, 1, theta, 1), theta)["D"],
    }
    for name, v in vec.items():
        eq[name + ".x"] = v[0]
        eq[name + ".y"] = v[1]
    return eq


def _select(eqs: Dict[str, float], names) -> np.ndarray:
    return np.array([eqs[n] for n in names], dtype=float)


def linear_system(phi: float, theta: float) -> Tuple[np.ndarray, np.ndarray]:
    """``(M, rhs)`` of the 20 linear equations, with ``M p = rhs``.

    Built by probing the affine residual at ``p = 0`` and at unit vectors.
    """
    zero = np.zeros(20)
    r0 = _select(_equations(zero, phi, theta), LINEAR_EQUATIONS)
    M = np.empty((20, 20))
    for j in range(20):
        e = zero.copy()
        e[j] = 1.0
        M[:, j] = _select(_equations(e, phi, theta), LINEAR_EQUATIONS) - r0
    return M, -r0


def assemble_gerver_residual(phi: float, theta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Linear parameters solved for fixed angles, and the two reserved residuals.

    Raises:
        ValueError: angles outside ``0 < phi < theta < pi/4``.
        SingularMatrixError: when the linear block is degenerate.
    """
    if not 0.0 < phi < theta < QUARTER_PI:
        raise ValueError(f"need 0 < phi < theta < pi/4, got phi={phi}, theta={theta}")
    M, rhs = linear_system(phi, theta)
    p = solve_linear(M, rhs)
    return p, _select(_equations(p, phi, theta), RESERVED_EQUATIONS)


@dataclass(frozen=True)
class GerverParams:
    phi: float
    theta: float
    linear: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "linear", tuple(float(v) for v in self.linear))
        if len(self.linear) != 20:
            raise ValueError("expected 20 linear parameters")

    def __getattr__(self, name):
        if name in LINEAR_NAMES:
            return self.linear[LINEAR_NAMES.index(name)]
        raise AttributeError(name)

    def kappa(self, j: int) -> Tuple[float, float]:
        return self.linear[4 * (j - 1)], self.linear[4 * (j - 1) + 1]

    def coefficients(self, j: int) -> SolutionCoefficients:
        return _coeffs(np.array(self.linear), j - 1)

    def as_dict(self) -> Dict[str, float]:
        d = {"phi": self.phi, "theta": self.theta}
        d.update(zip(LINEAR_NAMES, self.linear))
        return d

    def equations(self) -> Dict[str, float]:
        return {k: float(v) for k, v in
                _equations(np.array(self.linear), self.phi, self.theta).items()}


def _reduced(v):
    phi, theta = v
    try:
        return assemble_gerver_residual(phi, theta)[1]
    except (ValueError, SingularMatrixError):
        return np.array([np.inf, np.inf])


def solve_gerver(start=NEWTON_START, tol: float = 1e-14, check: bool = True) -> GerverParams:
    """Solve for all 22 Gerver constants by Newton on the two critical angles.

    Raises:
        NewtonError: if the angle iteration fails.
        ArithmeticError: if ``check`` is set and a redundant equation is violated.
    """
    phi, theta = find_root_nd(_reduced, np.asarray(start, dtype=float), tol=tol)
    p, _ = assemble_gerver_residual(phi, theta)
    params = GerverParams(float(phi), float(theta), tuple(p))
    if check:
        worst = max(abs(v) for v in redundancy_residuals(params).values())
        if worst > 1e-9:
            raise ArithmeticError(f"redundant equations violated by {worst:.3e}")
    return params


def redundancy_residuals(params: GerverParams) -> Dict[str, float]:
    """The six equations that are implied by the others, evaluated at ``params``."""
    eqs = params.equations()
    return {k: eqs[k] for k in REDUNDANT_EQUATIONS}


def rank_audit(params: GerverParams, h: float = 1e-7) -> Dict[str, int]:
    """Numerical ranks of the square 22x22 system and the full 28x22 system."""
    names_square = LINEAR_EQUATIONS + RESERVED_EQUATIONS
    names_full = names_square + REDUNDANT_EQUATIONS
    z0 = np.array([params.phi, params.theta, *params.linear])

    def F(z, names):
        return _select(_equations(z[2:], z[0], z[1]), names)

    def jac(names):
        f0 = F(z0, names)
        J = np.empty((len(names), 22))
        for j in range(22):
            z = z0.copy()
            step = h * max(1.0, abs(z[j]))
            z[j] += step
            J[:, j] = (F(z, names) - f0) / step
        return J

    return {
        "unknowns": 22,
        "square_rank": int(np.linalg.matrix_rank(jac(names_square), tol=1e-6)),
        "full_rank": int(np.linalg.matrix_rank(jac(names_full), tol=1e-6)),
        "equations": len(names_full),
    }


def grid_scan(n: int = 50) -> Dict[str, object]:
    """Scan ``0 < phi < theta < pi/4`` for cells where both reduced residuals change sign.

    Returns the candidate cell centres; this is evidence of uniqueness, not a proof.
    """
    grid = np.linspace(0.0, QUARTER_PI, n + 1)
    vals = np.full((n + 1, n + 1, 2), np.nan)
    for i in range(1, n):
        for j in range(i + 1, n):
            vals[i, j] = _reduced((grid[i], grid[j]))
    cells = []
    for i in range(1, n - 1):
        for j in range(i + 1, n - 1):
            block = vals[i:i + 2, j:j + 2].reshape(-1, 2)
            if not np.all(np.isfinite(block)):
                continue
            if all(block[:, k].min() <= 0.0 <= block[:, k].max() for k in range(2)):
                cells.append((0.5 * (grid[i] + grid[i + 1]), 0.5 * (grid[j] + grid[j + 1])))
    return {"n": n, "candidates": cells}


# Gerver's contact sets per phase.
PHASE_GAMMA = [CASE_GAMMA[k] for k in range(1, 6)]


def gerver_rotation_path(params: GerverParams) -> RotationPath:
    """Five-phase rotation path glued from the SOL1..SOL5 pieces."""
    bounds = [0.0, params.phi, params.theta, HALF_PI - params.theta, HALF_PI - params.phi, HALF_PI]
    segs = [
        PathSegment(Family(j), params.coefficients(j), bounds[j - 1], bounds[j], PHASE_GAMMA[j - 1])
        for j in range(1, 6)
    ]
    return RotationPath(segs, name="gerver")


# --------------------------------------------------------------------------
# Gerver's original implicit system, as an independent cross-check


@dataclass(frozen=True)
class GerverClassicParams:
    A: float
    B: float
    phi: float
    theta: float

    def residuals(self) -> np.ndarray:
        return classic_residuals(self.A, self.B, self.phi, self.theta)

    def as_dict(self) -> Dict[str, float]:
        return {"A": self.A, "B": self.B, "phi": self.phi, "theta": self.theta}


def classic_residuals(A: float, B: float, phi: float, theta: float) -> np.ndarray:
    sp, cp, st, ct = math.sin(phi), math.cos(phi), math.sin(theta), math.cos(theta)
    g = theta - phi
    return np.array([
        A * (ct - cp) - 2 * B * sp + (g - 1) * ct - st + cp + sp,
        A * (3 * st + sp) - 2 * B * cp + 3 * (g - 1) * st + 3 * ct - sp + cp,
        A * cp - (sp + 0.5 - 0.5 * cp + B * sp),
        (A + HALF_PI - phi - theta) - (B - 0.5 * g * (1 + A) - 0.25 * g * g),
    ])


def classic_eliminate(phi: float, theta: float) -> Tuple[float, float]:
    """``A, B`` from the two equations that are linear in them."""
    sp, cp = math.sin(phi), math.cos(phi)
    g = theta - phi
    M = np.array([[cp, -sp], [1 + 0.5 * g, -1.0]])
    rhs = np.array([sp + 0.5 - 0.5 * cp, -HALF_PI + phi + theta - 0.5 * g - 0.25 * g * g])
    A, B = solve_linear(M, rhs)
    return float(A), float(B)


def solve_gerver_classic(start=NEWTON_START, tol: float = 1e-14) -> GerverClassicParams:
    def F(v):
        A, B = classic_eliminate(*v)
        return classic_residuals(A, B, *v)[:2]

    phi, theta = find_root_nd(F, np.asarray(start, dtype=float), tol=tol)
    A, B = classic_eliminate(phi, theta)
    return GerverClassicParams(A, B, float(phi), float(theta))


__all__ = [
    "GerverParams", "GerverClassicParams", "assemble_gerver_residual", "solve_gerver",
    "gerver_rotation_path", "solve_gerver_classic", "redundancy_residuals", "rank_audit",
    "grid_scan", "linear_system", "NewtonError",
]
