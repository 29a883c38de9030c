"""Numerical checks of the algebraic facts about the ambidextrous shape.

Three kinds of claim are checked:

* minimal polynomials of its constants, with a backward-error style test
  ``|p(v)| <= 1e-8 (1 + |p'(v)|)``;
* the boundary pieces lying on three sextic curves ``P, Q, R`` (in scaled
  coordinates centred at ``kappa6``) and on radius-1/2 circles about the
  focal points;
* the focal distance being half of the length.

Boundary pieces are numbered ``sigma1 .. sigma18`` clockwise from the
rightmost point ``(1, 1/2)`` in the coordinates used throughout the package;
:data:`SIGMA` lists the generator of each piece.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .ambidextrous import (
    AmbiMetrics, AmbiParams, ambi_closed_form, ambi_metrics, ambi_rotation_path, cbrt,
    focal_points,
)
from .geometry import reflect_half
from .paths import contact_points

SQRT2 = math.sqrt(2.0)
MINPOLY_RTOL = 1e-8
CURVE_TOL = 1e-7


# --------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True)
class IntPolynomial:
    """Polynomial with integer coefficients, lowest degree first."""

    coefficients: Tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(v) for v in self.coefficients)
        if not c or c[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        object.__setattr__(self, "coefficients", c)

    @classmethod
    def from_descending(cls, *coeffs: int) -> "IntPolynomial":
        return cls(tuple(reversed(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: float) -> float:
        # fsum keeps the cancellation between large terms honest
        return math.fsum(c * x ** k for k, c in enumerate(self.coefficients))

    def derivative_at(self, x: float) -> float:
        return math.fsum(k * c * x ** (k - 1) for k, c in enumerate(self.coefficients) if k)

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            body = ("" if mag == 1 and k else str(mag)) + ("x" if k else "") + (f"^{k}" if k > 1 else "")
            terms.append(("-" if c < 0 else "+") + body)
        s = "".join(terms)
        return s[1:] if s.startswith("+") else s


@dataclass(frozen=True)
class Check:
    """One verification result; serialises to ``{check, value, residual, threshold, pass}``.

    For curve checks ``value`` is the largest raw residual over all samples.
    """

    check: str
    value: float
    residual: float
    threshold: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.threshold)

    def as_dict(self) -> Dict[str, object]:
        return {"check": self.check, "value": self.value, "residual": self.residual,
                "threshold": self.threshold, "pass": self.passed}


def check_min_poly(p: IntPolynomial, value: float, name: str = "") -> Check:
    """Residual of ``p`` at ``value`` against ``1e-8 (1 + |p'(value)|)``."""
    residual = abs(p(value))
    threshold = MINPOLY_RTOL * (1.0 + abs(p.derivative_at(value)))
    return Check(name or f"minpoly {p}", float(value), residual, threshold)


_P = IntPolynomial.from_descending
TABLE3: Dict[str, IntPolynomial] = {
    "tan(beta)": _P(4, 0, 3, -1),
    "sin(beta)": _P(2, 0, 3, 0, 12, 0, -1),
    "cos(beta)": _P(2, 0, -9, 0, 24, 0, -16),
    "a1": _P(2048, 0, -1536, 0, -24, 0, -1),
    "f1": _P(4251528, 0, -9920232, 0, 6672537, 0, -1936224, 0, 256608, 0, -13824, 0, 256),
    "kappa11": _P(2048, -12288, 29184, -34816, 21480, -6096, 487),
    "kappa61": _P(729, -4374, 9963, -10692, 5076, -432, -272),
    "kappa51": _P(1492992, -8957952, 19284480, -17418240, 3597480, 3753648, -1768033),
    "Delta-beta": _P(1, 3, 0, -8),
    "lambda": _P(729, 0, -3888, 0, -432, 0, -128),
}
# quantities sharing a polynomial with another row
_SHARED = {"e1": "a1", "f2": "f1"}


def table3_values(ambi: AmbiParams, metrics: AmbiMetrics) -> Dict[str, float]:
    b = ambi.beta
    return {
        "tan(beta)": math.tan(b), "sin(beta)": math.sin(b), "cos(beta)": math.cos(b),
        "a1": ambi.a1, "e1": ambi.e1, "f1": ambi.f1, "f2": ambi.f2,
        "kappa11": ambi.kappa11, "kappa61": ambi.kappa61, "kappa51": ambi.kappa51,
        "Delta-beta": metrics.area_delta - b, "lambda": metrics.length_lambda,
    }


def check_all_table3(ambi: AmbiParams, metrics: AmbiMetrics) -> List[Check]:
    """Every minimal-polynomial row, including the shared ``e1`` and ``f2``."""
    out = []
    for name, value in table3_values(ambi, metrics).items():
        poly = TABLE3[_SHARED.get(name, name)]
        out.append(check_min_poly(poly, value, f"minpoly {name}"))
    return out


# --------------------------------------------------------------------------
# the sextic curves


def curve_z() -> float:
    return cbrt(4 + 2 * SQRT2) + cbrt(4 - 2 * SQRT2)


@dataclass(frozen=True)
class CurveConstants:
    Z: float
    gamma1: float
    gamma2: float
    gamma3: float
    gamma4: float
    gamma5: float
    alpha1: float
    alpha2: float
    alpha3: float
    alpha4: float

    def __post_init__(self):
        for name in ("gamma2", "gamma4", "alpha3"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative to take its square root")

    @classmethod
    def from_z(cls, Z: Optional[float] = None) -> "CurveConstants":
        Z = curve_z() if Z is None else Z
        Z2 = Z * Z
        return cls(
            Z=Z,
            gamma1=-3 * Z + 14, gamma2=-Z + 4, gamma3=-27 * Z2 + 156 * Z - 190,
            gamma4=8 * Z2 - 26 * Z + 8, gamma5=9 * Z - 20,
            alpha1=-3 * Z + 16, alpha2=27 * Z2 - 240 * Z + 592,
            alpha3=12 * Z2 - 54 * Z + 56, alpha4=-9 * Z + 28,
        )

    def z_cubic_residual(self) -> float:
        return self.Z ** 3 - 6 * self.Z - 8


def curve_scale(ambi: AmbiParams) -> float:
    return 0.25 * math.sqrt(2 - SQRT2) * ambi.f1


def to_curve_coords(p, ambi: AmbiParams) -> np.ndarray:
    """Map ``(x, y)`` (or an ``(m, 2)`` array) to the scaled ``(X, Y)`` frame."""
    s = curve_scale(ambi)
    return (np.asarray(p, dtype=float) - np.array([ambi.kappa61, ambi.kappa62])) / s


def eval_p(X, Y, c: Optional[CurveConstants] = None):
    return (X * X + Y * Y - 8) ** 3 - 216 * (Y - X) ** 2


def eval_q(X, Y, c: CurveConstants):
    r = X * X + Y * Y
    return (r ** 3 - 12 * c.gamma1 * r ** 2 - 216 * math.sqrt(c.gamma2) * r * (Y - X)
            - 12 * c.gamma3 * r - 432 * math.sqrt(c.gamma4) * (Y - X) + 432 * X * Y
            - 32 * c.gamma5)


def eval_r(X, Y, c: CurveConstants):
    r = X * X + Y * Y
    return (r ** 3 - 24 * c.alpha1 * r ** 2 + 48 * c.alpha2 * r
            + 13824 * math.sqrt(c.alpha3) * Y + 4096 * c.alpha4)


_CURVES = {"P": eval_p, "Q": eval_q, "R": eval_r}


def eval_curves(X, Y, c: CurveConstants):
    return eval_p(X, Y, c), eval_q(X, Y, c), eval_r(X, Y, c)


def curve_gradient(name: str, X, Y, c: CurveConstants, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient norm of a curve polynomial."""
    f = _CURVES[name]
    gx = (f(X + h, Y, c) - f(X - h, Y, c)) / (2 * h)
    gy = (f(X, Y + h, c) - f(X, Y - h, c)) / (2 * h)
    return np.hypot(gx, gy)


# --------------------------------------------------------------------------
# boundary pieces


@dataclass(frozen=True)
class Sigma:
    index: int
    source: str
    phase: int
    reflected: bool
    curve: Optional[str]  # "P", "Q", "R", "F1", "F2" or None

    @property
    def label(self) -> str:
        name = f"rho({self.source})" if self.reflected else self.source
        return f"{name}[{self.phase}]"


def _sigma_table() -> Dict[int, Sigma]:
    rows = [
        ("A", 2, True, None), ("A", 3, True, "F2"), ("B", 3, False, "F2"),
        ("B", 2, False, "Q"), ("x", 2, False, "R"), ("D", 2, False, None),
        ("D", 1, False, "F1"), ("C", 1, True, "F1"), ("C", 2, True, "P"),
        ("C", 2, False, None), ("C", 1, False, "F1"), ("D", 1, True, "F1"),
        ("D", 2, True, None), ("x", 2, True, None), ("B", 2, True, None),
        ("B", 3, True, "F2"), ("A", 3, False, "F2"), ("A", 2, False, "P"),
    ]
    return {k + 1: Sigma(k + 1, *row) for k, row in enumerate(rows)}


SIGMA: Dict[int, Sigma] = _sigma_table()
CURVE_SEGMENTS = (4, 5, 9, 18)
ARC_SEGMENTS = (2, 3, 7, 8, 11, 12, 16, 17)


def sigma_labels() -> List[str]:
    return [SIGMA[k].label for k in range(1, 19)]


def sigma_order(labels: Sequence[str]) -> List[str]:
    """Turn counterclockwise attributed labels (starting at the rightmost point)
    into the clockwise ``sigma`` order."""
    return list(reversed(labels))


def _parse_segment(segment: Union[int, str]) -> int:
    if isinstance(segment, str):
        key = segment.lower().removeprefix("sigma").removeprefix("σ")
        try:
            segment = int(key)
        except ValueError:
            raise KeyError(f"unknown segment {segment!r}") from None
    if segment not in SIGMA:
        raise KeyError(f"unknown segment {segment!r}; expected 1..18")
    return int(segment)


def segment_points(ambi: AmbiParams, segment: Union[int, str], samples: int = 200) -> np.ndarray:
    """Points of a boundary piece's generator over its whole phase interval."""
    sig = SIGMA[_parse_segment(segment)]
    seg = ambi_rotation_path(ambi).segments[sig.phase - 1]
    pts = np.empty((samples, 2))
    for i, t in enumerate(np.linspace(seg.t_lo, seg.t_hi, samples)):
        x, xp = seg.eval(t), seg.eval(t, 1)
        pts[i] = x if sig.source == "x" else contact_points(x, xp, t)[sig.source]
    return reflect_half(pts) if sig.reflected else pts


def check_curve_membership(ambi: AmbiParams, segment: Union[int, str], samples: int = 200,
                           constants: Optional[CurveConstants] = None) -> Check:
    """Largest curve residual over ``samples`` points of a boundary piece.

    Sextic residuals pass when ``|f| <= 1e-7 (1 + |grad f|)`` at every sample;
    arcs pass when ``| |p - F| - 1/2 | <= 1e-7``.

    Raises:
        KeyError: for an unknown segment or one without a declared curve.
    """
    k = _parse_segment(segment)
    sig = SIGMA[k]
    if sig.curve is None:
        raise KeyError(f"sigma{k} has no declared curve")
    pts = segment_points(ambi, k, samples)
    if sig.curve in ("F1", "F2"):
        centre = focal_points(ambi)[0 if sig.curve == "F1" else 1]
        res = np.abs(np.linalg.norm(pts - centre, axis=1) - 0.5)
        return Check(f"sigma{k} on circle {sig.curve}", float(res.max()), float(res.max()), CURVE_TOL)
    c = constants or CurveConstants.from_z()
    XY = to_curve_coords(pts, ambi)
    X, Y = XY[:, 0], XY[:, 1]
    res = np.abs(_CURVES[sig.curve](X, Y, c))
    ratio = res / (1.0 + curve_gradient(sig.curve, X, Y, c))
    # the sample closest to failing, with the threshold it was held to
    worst = int(np.argmax(ratio))
    grad = float(res[worst] / ratio[worst] - 1.0) if res[worst] else 0.0
    return Check(f"sigma{k} on {sig.curve}", float(res.max()), float(res[worst]),
                 CURVE_TOL * (1.0 + grad))


def focal_distance_check(ambi: AmbiParams, metrics: AmbiMetrics, tol: float = 1e-12) -> Check:
    f1, f2 = focal_points(ambi)
    d = float(np.linalg.norm(f2 - f1))
    return Check("focal distance = lambda/2", d, abs(d - 0.5 * metrics.length_lambda), tol)


# --------------------------------------------------------------------------
# report


@dataclass
class AlgebraicReport:
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def as_list(self) -> List[Dict[str, object]]:
        return [c.as_dict() for c in self.checks]

    def to_json(self) -> str:
        return json.dumps(self.as_list(), indent=2)


def verify_algebra(ambi: Optional[AmbiParams] = None, metrics: Optional[AmbiMetrics] = None,
                   samples: int = 200) -> AlgebraicReport:
    """Minimal-polynomial rows, the Z cubic, every declared curve membership and the focal distance."""
    ambi = ambi or ambi_closed_form()
    metrics = metrics or ambi_metrics(ambi)
    c = CurveConstants.from_z()
    report = AlgebraicReport(check_all_table3(ambi, metrics))
    report.checks.append(Check("Z^3 - 6Z - 8 = 0", c.Z, abs(c.z_cubic_residual()), 1e-12))
    for k in CURVE_SEGMENTS + ARC_SEGMENTS:
        report.checks.append(check_curve_membership(ambi, k, samples, c))
    report.checks.append(focal_distance_check(ambi, metrics))
    return report


__all__ = [
    "IntPolynomial", "Check", "check_min_poly", "TABLE3", "check_all_table3", "table3_values",
    "CurveConstants", "curve_z", "curve_scale", "to_curve_coords", "eval_p", "eval_q", "eval_r",
    "eval_curves", "curve_gradient", "Sigma", "SIGMA", "CURVE_SEGMENTS", "ARC_SEGMENTS",
    "sigma_labels", "sigma_order", "segment_points", "check_curve_membership",
    "focal_distance_check", "AlgebraicReport", "verify_algebra",
]
