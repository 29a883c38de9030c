"""The aggregate verification run behind ``sofa verify``.

Every module contributes its checks as :class:`~sofa.algebraic.Check` rows
so that one report covers constants, redundancy, ODE residuals, curves and
the constructed shapes.
"""

from __future__ import annotations

import math
from typing import List, Optional

import numpy as np

from . import ambidextrous as amb
from . import gerver as ger
from .algebraic import (
    AlgebraicReport, Check, check_curve_membership, sigma_labels, sigma_order, verify_algebra,
)
from .geometry import HALF_PI
from .odes import SolutionCoefficients, sol_eval, verify_sol_satisfies_ode
from .paths import (
    contact_paths, contact_velocities, hammersley_area,
    hammersley_contacts, hammersley_path,
)
from .reference import (
    AMBI_AREA, AMBI_LENGTH, AMBI_TABLE, GERVER_AREA, GERVER_TABLE, HAMMERSLEY_AREA_STAR,
    HAMMERSLEY_R_STAR, relative_error,
)
from .shape import (
    SweepConfig, area_by_boundary, attribute_boundary, build_shape, circle_merged_count,
    symmetrize_ambidextrous, symmetry_errors,
)

Report = AlgebraicReport


def _worst(values) -> float:
    return float(max(abs(v) for v in values))


def ambi_checks() -> List[Check]:
    closed = amb.ambi_closed_form()
    numeric = amb.solve_ambi_numeric()
    metrics = amb.ambi_metrics(closed)
    out = []
    diff = max(relative_error(getattr(numeric, k), getattr(closed, k)) for k in AMBI_TABLE)
    out.append(Check("ambi numeric vs closed form", numeric.beta, diff, 1e-12))
    for k, ref in AMBI_TABLE.items():
        v = getattr(closed, k)
        out.append(Check(f"ambi {k} vs published", v, relative_error(v, ref), 1e-13))
    tb = math.tan(closed.beta)
    out.append(Check("ambi 4tan^3+3tan-1", tb, abs(4 * tb ** 3 + 3 * tb - 1), 1e-13))
    out.append(Check("ambi area", metrics.area_delta, abs(metrics.area_delta - AMBI_AREA), 1e-11))
    cf = amb.closed_form_area(closed.beta)
    out.append(Check("ambi area vs radical", metrics.area_delta, abs(metrics.area_delta - cf), 1e-11))
    lam = metrics.length_lambda
    out.append(Check("ambi length", lam, abs(lam - AMBI_LENGTH), 1e-12))
    out.append(Check("ambi length vs radical", lam, abs(lam - amb.length_radical()), 1e-12))
    red = amb.redundancy_residuals(numeric)
    out.append(Check("ambi redundant equations", len(red), _worst(red.values()), 1e-9))
    return out


def gerver_checks() -> List[Check]:
    params = ger.solve_gerver(check=False)
    d = params.as_dict()
    out = []
    worst = max(relative_error(d[k], ref) for k, ref in GERVER_TABLE.items())
    out.append(Check("gerver constants vs published", params.phi, worst, 1e-11))
    classic = ger.solve_gerver_classic()
    gap = max(abs(classic.phi - params.phi), abs(classic.theta - params.theta))
    out.append(Check("gerver classic angles", classic.phi, gap, 1e-10))
    red = ger.redundancy_residuals(params)
    out.append(Check("gerver redundant equations", len(red), _worst(red.values()), 1e-9))
    ranks = ger.rank_audit(params)
    out.append(Check("gerver full-system rank", ranks["full_rank"],
                     abs(ranks["full_rank"] - ranks["unknowns"]), 0.0))
    return out


def _random_coeffs(rng) -> SolutionCoefficients:
    k = rng.uniform(-2.0, 2.0, 4)
    return SolutionCoefficients((k[0], k[1]), k[2], k[3])


def ode_checks(draws: int = 100, seed: int = 0, samples: int = 12) -> List[Check]:
    """SOL-into-ODE residuals and finite-difference derivative checks per family."""
    rng = np.random.default_rng(seed)
    out = []
    for fam in range(1, 7):
        res, fd = 0.0, 0.0
        for _ in range(draws):
            r, f = verify_sol_satisfies_ode(fam, _random_coeffs(rng), samples, return_fd=True)
            res, fd = max(res, r), max(fd, f)
        out.append(Check(f"SOL{fam} satisfies ODE{fam}", draws, res, 1e-9))
        out.append(Check(f"SOL{fam} derivatives vs differences", draws, fd, 1e-6))
    # the contact path that a case freezes: A in case 1, C in case 5
    for fam, name in ((1, "A"), (5, "C")):
        worst = 0.0
        for _ in range(draws // 10):
            co = _random_coeffs(rng)
            for t in np.linspace(0.05, HALF_PI - 0.05, 9):
                v = contact_velocities(sol_eval(fam, co, t, 1), sol_eval(fam, co, t, 2), t)[name]
                worst = max(worst, float(np.max(np.abs(v))))
        out.append(Check(f"case {fam}: {name}' = 0", draws // 10, worst, 1e-9))
    return out


def hammersley_checks(seed: int = 0) -> List[Check]:
    out = []
    a = hammersley_area(HAMMERSLEY_R_STAR)
    out.append(Check("hammersley area at 2/pi", a, abs(a - HAMMERSLEY_AREA_STAR), 1e-14))
    slope = 2.0 - math.pi * HAMMERSLEY_R_STAR
    out.append(Check("hammersley area stationary at 2/pi", slope, abs(slope), 1e-14))
    rng = np.random.default_rng(seed)
    worst = 0.0
    for r, t in zip(rng.uniform(0, 1, 20), rng.uniform(0, HALF_PI, 20)):
        got = contact_paths(hammersley_path(float(r)), float(t))
        ref = hammersley_contacts(float(r), float(t))
        for k in "ABCD":
            worst = max(worst, float(np.max(np.abs(getattr(got, k) - ref[k]))))
    out.append(Check("hammersley contact closed forms", 20, worst, 1e-12))
    return out


def shape_checks(n: int = 512) -> List[Check]:
    out = []
    cfg = SweepConfig(n)
    closed = amb.ambi_closed_form()
    sigma = attribute_boundary(symmetrize_ambidextrous(build_shape(amb.ambi_rotation_path(closed), cfg)))
    labels = [s.label for s in sigma.boundary_segments]
    out.append(Check("sigma segment count", len(labels), abs(len(labels) - 18), 0.0))
    mismatch = sum(a != b for a, b in zip(sigma_order(labels), sigma_labels()))
    out.append(Check("sigma segment generators", len(labels),
                     mismatch + abs(len(labels) - 18), 0.0))
    ab = area_by_boundary(sigma)
    out.append(Check("sigma boundary area", ab, abs(ab - AMBI_AREA), 1e-9))
    out.append(Check("sigma polygon area", sigma.area_polygon,
                     abs(sigma.area_polygon - AMBI_AREA), 5.0 / n))
    lr, ud = symmetry_errors(sigma, closed.kappa61)
    out.append(Check("sigma symmetry", lr, max(lr, ud), 3.0 / n))
    merged = circle_merged_count(sigma, amb.focal_points(closed))
    out.append(Check("sigma segments after arc merges", merged, abs(merged - 14), 0.0))

    params = ger.solve_gerver(check=False)
    gshape = attribute_boundary(build_shape(ger.gerver_rotation_path(params), cfg))
    walls = sum(1 for s in gshape.boundary_segments if not s.is_curve)
    curves = len(gshape.boundary_segments) - walls
    out.append(Check("gerver 15 curved + 3 straight", curves,
                     abs(curves - 15) + abs(walls - 3), 0.0))
    ga = area_by_boundary(gshape)
    out.append(Check("gerver boundary area", ga, abs(ga - GERVER_AREA), 1e-6))
    out.append(Check("gerver polygon area", gshape.area_polygon,
                     abs(gshape.area_polygon - GERVER_AREA), 5.0 / n))

    hshape = attribute_boundary(build_shape(hammersley_path(HAMMERSLEY_R_STAR), cfg))
    ha = area_by_boundary(hshape)
    out.append(Check("hammersley boundary area", ha, abs(ha - HAMMERSLEY_AREA_STAR), 1e-9))
    out.append(Check("hammersley polygon area", hshape.area_polygon,
                     abs(hshape.area_polygon - HAMMERSLEY_AREA_STAR), 2e-3))
    return out


def run_suite(n_angles: int = 512, seed: int = 0, shapes: bool = True,
              segment: Optional[str] = None) -> Report:
    """Run every check; with ``segment`` only that boundary-curve membership."""
    if segment is not None:
        return Report([check_curve_membership(amb.ambi_closed_form(), segment)])
    report = Report()
    report.checks.extend(ambi_checks())
    report.checks.extend(verify_algebra().checks)
    report.checks.extend(gerver_checks())
    report.checks.extend(ode_checks(seed=seed))
    report.checks.extend(hammersley_checks(seed))
    if shapes:
        report.checks.extend(shape_checks(n_angles))
    return report
