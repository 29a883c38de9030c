"""The six optimality ODEs for a rotation path and their closed-form solutions.

Every ODE has the form ``x'' = R_t (v + M(t) x')`` and every solution the
form ``x(t) = R_t u(t) + kappa``. Derivatives of the solutions follow from
``R_t' = R_t J`` with ``J`` the quarter-turn matrix::

    x'  = R_t (J u + u')
    x'' = R_t (u'' + 2 J u' - u)

so each family only needs ``u`` and its first two derivatives.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, FrozenSet, Tuple

import numpy as np

from .geometry import rotation

SQRT2 = math.sqrt(2.0)

J = np.array([[0.0, -1.0], [1.0, 0.0]])

# Contact sets for each case; "x" is the rotating corner itself.
CASE_GAMMA: Dict[int, FrozenSet[str]] = {
    1: frozenset("ACD"),
    2: frozenset("xACD"),
    3: frozenset("xAC"),
    4: frozenset("xABC"),
    5: frozenset("ABC"),
    6: frozenset("xABCD"),
}


def case_for_gamma(gamma) -> int:
    g = frozenset(gamma)
    for case, known in CASE_GAMMA.items():
        if g == known:
            return case
    raise ValueError(f"no optimality ODE for contact set {sorted(g)}")


# (v, M(t)) exactly as printed for each case.
def _m_printed(case: int, t: float) -> np.ndarray:
    s, c = math.sin(t), math.cos(t)
    if case in (1, 5):
        return np.array([[2 * s, -2 * c], [2 * c, 2 * s]])
    if case == 2:
        return np.array([[s, -c], [1.5 * c, 1.5 * s]])
    if case == 3:
        return np.array([[s, -c], [c, s]])
    if case == 4:
        return np.array([[1.5 * s, -1.5 * c], [c, s]])
    if case == 6:
        return np.array([[1.5 * s, -1.5 * c], [1.5 * c, 1.5 * s]])
    raise ValueError(f"invalid case {case}")


_V = {
    1: (-1.0, -0.5),
    2: (-1.0, -0.5),
    3: (-1.0, -1.0),
    4: (-0.5, -1.0),
    5: (-0.5, -1.0),
    6: (-0.5, -0.5),
}

# Independent encoding: M(t) = diag(w) R_{pi/2 - t}, where w counts how many
# walls react to a slide along mu and along nu.
_WEIGHTS = {
    1: (2.0, 2.0),
    2: (1.0, 1.5),
    3: (1.0, 1.0),
    4: (1.5, 1.0),
    5: (2.0, 2.0),
    6: (1.5, 1.5),
}


def ode_matrix(case: int, t: float) -> np.ndarray:
    return _m_printed(case, t)


def ode_matrix_generated(case: int, t: float) -> np.ndarray:
    if case not in _WEIGHTS:
        raise ValueError(f"invalid case {case}")
    return np.diag(_WEIGHTS[case]) @ rotation(0.5 * math.pi - t)


def ode_forcing(case: int) -> np.ndarray:
    if case not in _V:
        raise ValueError(f"invalid case {case}")
    return np.array(_V[case])


def reduced_system(case: int) -> Tuple[np.ndarray, np.ndarray]:
    """``(T, v)`` such that ``y = R_{-t} x'`` obeys ``y' = T y + v``."""
    w = np.diag(_WEIGHTS[case])
    return (w - np.eye(2)) @ J, ode_forcing(case)


def ode_rhs(case: int, t: float, xp) -> np.ndarray:
    """Right-hand side ``x''(t)`` of the optimality ODE for ``case``."""
    v = ode_forcing(case)
    return rotation(t) @ (v + ode_matrix(case, t) @ np.asarray(xp, dtype=float))


@dataclass(frozen=True)
class SolutionCoefficients:
    """Free constants of one solution family: ``kappa`` and the scalar pair.

    The pair is (a1, a2) for family 1, (b1, b2) for 2, ... (f1, f2) for 6.
    """

    kappa: Tuple[float, float] = (0.0, 0.0)
    c1: float = 0.0
    c2: float = 0.0

    def __post_init__(self):
        k = tuple(float(z) for z in self.kappa)
        object.__setattr__(self, "kappa", k)
        if not all(math.isfinite(z) for z in (*k, self.c1, self.c2)):
            raise ValueError("solution coefficients must be finite")


def _u_family(family: int, p: float, q: float, t: float):
    """``u``, ``u'``, ``u''`` for a solution family (7 = semicircle of radius ``p``)."""
    if family in (1, 5):
        c, s = math.cos(t), math.sin(t)
        ox, oy = (-1.0, -0.5) if family == 1 else (-0.5, -1.0)
        u = np.array([p * c + q * s + ox, -q * c + p * s + oy])
        du = np.array([-p * s + q * c, q * s + p * c])
        ddu = np.array([-p * c - q * s, q * c - p * s])
    elif family == 2:
        u = np.array([-0.25 * t * t + p * t + q, 0.5 * t - p - 1.0])
        du = np.array([-0.5 * t + p, 0.5])
        ddu = np.array([-0.5, 0.0])
    elif family == 3:
        u = np.array([p - t, q + t])
        du = np.array([-1.0, 1.0])
        ddu = np.zeros(2)
    elif family == 4:
        u = np.array([-0.5 * t + p - 1.0, -0.25 * t * t + p * t + q])
        du = np.array([-0.5, -0.5 * t + p])
        ddu = np.array([0.0, -0.5])
    elif family == 6:
        c, s = math.cos(0.5 * t), math.sin(0.5 * t)
        u = np.array([p * c + q * s - 1.0, -q * c + p * s - 1.0])
        du = 0.5 * np.array([-p * s + q * c, q * s + p * c])
        ddu = 0.25 * np.array([-p * c - q * s, q * c - p * s])
    elif family == 7:
        s, c = math.sin(t), math.cos(t)
        u = np.array([0.0, 2.0 * p * s])
        du = np.array([0.0, 2.0 * p * c])
        ddu = np.array([0.0, -2.0 * p * s])
    else:
        raise ValueError(f"invalid solution family {family}")
    return u, du, ddu


def sol_eval(family: int, coeffs: SolutionCoefficients, t: float, order: int = 0) -> np.ndarray:
    """Evaluate solution family ``family`` (or a derivative of order 1 or 2) at ``t``."""
    u, du, ddu = _u_family(family, coeffs.c1, coeffs.c2, t)
    R = rotation(t)
    if order == 0:
        return R @ u + np.array(coeffs.kappa)
    if order == 1:
        return R @ (J @ u + du)
    if order == 2:
        return R @ (ddu + 2.0 * (J @ du) - u)
    raise ValueError(f"derivative order must be 0, 1 or 2, got {order}")


def verify_sol_satisfies_ode(family: int, coeffs: SolutionCoefficients, samples: int = 50,
                             h: float = 1e-6, return_fd: bool = False):
    """Largest ODE residual of a solution over ``samples`` points in (0, pi/2).

    With ``return_fd=True`` also returns the largest disagreement between the
    analytic first and second derivatives and central differences of step ``h``.
    """
    if samples < 10:
        raise ValueError("need at least 10 samples")
    ts = np.linspace(0.0, 0.5 * math.pi, samples + 2)[1:-1]
    worst = 0.0
    worst_fd = 0.0
    for t in ts:
        xp = sol_eval(family, coeffs, t, 1)
        xpp = sol_eval(family, coeffs, t, 2)
        worst = max(worst, float(np.max(np.abs(xpp - ode_rhs(family, t, xp)))))
        if return_fd:
            fwd, bwd = sol_eval(family, coeffs, t + h), sol_eval(family, coeffs, t - h)
            d1 = (fwd - bwd) / (2 * h)
            d1p = (sol_eval(family, coeffs, t + h, 1) - sol_eval(family, coeffs, t - h, 1)) / (2 * h)
            worst_fd = max(worst_fd, float(np.max(np.abs(d1 - xp))),
                           float(np.max(np.abs(d1p - xpp))))
    if return_fd:
        return worst, worst_fd
    return worst
