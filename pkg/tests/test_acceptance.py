"""Acceptance criteria 1 to 11, each printing one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the lines are printed even
when output capture is on.
"""

import math
import time

import numpy as np
import pytest

from sofa import ambidextrous as amb
from sofa import gerver as ger
from sofa.algebraic import (
    ARC_SEGMENTS, CURVE_SEGMENTS, SIGMA, TABLE3, check_all_table3, check_curve_membership,
    check_min_poly, focal_distance_check, sigma_labels, sigma_order,
)
from sofa.geometry import HALF_PI
from sofa.paths import contact_paths, hammersley_area, hammersley_contacts, hammersley_path
from sofa.reference import (
    AMBI_AREA, AMBI_LENGTH, AMBI_TABLE, GERVER_AREA, GERVER_TABLE, HAMMERSLEY_AREA_STAR,
    HAMMERSLEY_R_STAR, relative_error,
)
from sofa.shape import (
    SweepConfig, area_by_boundary, build_shape, symmetrize_ambidextrous,
    symmetry_errors,
)
from sofa.suite import ode_checks, run_suite


@pytest.fixture
def report(capsys):
    """Call with (number, ok, detail); prints the line and returns ok."""
    def emit(number: int, ok: bool, detail: str) -> bool:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
        return ok
    return emit


def _timed(f):
    t0 = time.perf_counter()
    out = f()
    return out, time.perf_counter() - t0


def test_criterion_01_ambi_constants(report):
    p, dt = _timed(amb.ambi_closed_form)
    names = ("beta", "a1", "f1", "f2", "kappa11", "kappa61", "kappa51")
    worst = max(relative_error(getattr(p, k), AMBI_TABLE[k]) for k in names)
    ok = worst <= 1e-13 and dt < 1.0
    assert report(1, ok, f"max rel err {worst:.2e} (tol 1e-13), {dt:.3f}s (< 1s)")


def test_criterion_02_ambi_area(report):
    def work():
        p = amb.ambi_closed_form()
        return p, amb.compute_ambi_area(p)
    (p, area), dt = _timed(work)
    err = abs(area - AMBI_AREA)
    radical = float(np.cbrt(3 + 2 * math.sqrt(2)) + np.cbrt(3 - 2 * math.sqrt(2))) - 1 + p.beta
    gap = abs(area - radical)
    ok = err <= 1e-11 and gap <= 1e-11 and dt < 5.0
    assert report(2, ok, f"Delta={area:.16f} err {err:.2e}, vs radical {gap:.2e}, {dt:.3f}s (< 5s)")


def test_criterion_03_ambi_length(report):
    p = amb.ambi_closed_form()
    lam = amb.compute_ambi_length(p)
    err = abs(lam - AMBI_LENGTH)
    c = check_min_poly(TABLE3["lambda"], lam)
    ok = err <= 1e-12 and c.passed
    assert report(3, ok, f"lambda={lam:.16f} err {err:.2e}, minpoly residual {c.residual:.2e} "
                         f"<= {c.threshold:.2e}")


def test_criterion_04_gerver_constants(report):
    def work():
        return ger.solve_gerver(start=(0.1, 0.6)), ger.solve_gerver_classic()
    (params, classic), dt = _timed(work)
    d = params.as_dict()
    worst = max(relative_error(d[k], v) for k, v in GERVER_TABLE.items())
    gap = max(abs(classic.phi - params.phi), abs(classic.theta - params.theta))
    ok = len(GERVER_TABLE) == 22 and worst <= 1e-11 and gap <= 1e-10 and dt < 2.0
    assert report(4, ok, f"phi={params.phi:.15f} theta={params.theta:.15f}, max rel err {worst:.2e}, "
                         f"classic gap {gap:.2e}, {dt:.3f}s (< 2s)")


def test_criterion_05_gerver_area(report, gerver_path, gerver_shape):
    boundary = area_by_boundary(gerver_shape)
    poly = build_shape(gerver_path, SweepConfig(1024)).area_polygon
    e1, e2 = abs(boundary - GERVER_AREA), abs(poly - GERVER_AREA)
    ok = e1 <= 1e-6 and e2 <= 2e-3
    assert report(5, ok, f"boundary area {boundary:.10f} err {e1:.2e} (1e-6), "
                         f"polygon n=1024 {poly:.6f} err {e2:.2e} (2e-3)")


def test_criterion_06_hammersley(report, hammersley_shape):
    analytic = abs(hammersley_area(HAMMERSLEY_R_STAR) - HAMMERSLEY_AREA_STAR)
    rs = np.linspace(0.0, 1.0, 10001)
    argmax = rs[int(np.argmax([hammersley_area(r) for r in rs]))]
    is_max = abs(argmax - HAMMERSLEY_R_STAR) <= 1e-4
    built = abs(hammersley_shape.area_polygon - HAMMERSLEY_AREA_STAR)
    rng = np.random.default_rng(6)
    worst = 0.0
    for r, t in zip(rng.uniform(0, 1, 50), rng.uniform(0, HALF_PI, 50)):
        got, ref = contact_paths(hammersley_path(r), t), hammersley_contacts(r, t)
        worst = max(worst, max(float(np.max(np.abs(getattr(got, k) - ref[k]))) for k in "ABCD"))
    ok = analytic <= 1e-14 and is_max and built <= 2e-3 and worst <= 1e-12
    assert report(6, ok, f"analytic err {analytic:.1e}, argmax {argmax:.4f}, built n=512 err "
                         f"{built:.2e}, contact closed forms {worst:.1e}")


def test_criterion_07_ode_consistency(report):
    checks = ode_checks(draws=100, seed=7)
    worst = max(checks, key=lambda c: c.residual / c.threshold)
    ok = all(c.passed for c in checks) and len(checks) == 14
    assert report(7, ok, f"{len(checks)} checks, tightest {worst.check}: {worst.residual:.2e} "
                         f"<= {worst.threshold:.0e}")


def test_criterion_08_redundancy(report):
    g = ger.redundancy_residuals(ger.solve_gerver(check=False))
    a = amb.redundancy_residuals(amb.solve_ambi_numeric())
    wg, wa = max(map(abs, g.values())), max(map(abs, a.values()))
    # six scalar Gerver equations; three vector ambidextrous equations
    ok = len(g) == 6 and len({k.split(".")[0] for k in a}) == 3 and max(wg, wa) <= 1e-9
    assert report(8, ok, f"gerver {len(g)} eqs max {wg:.2e}, ambi {len(a)} eqs max {wa:.2e} (1e-9)")


def test_criterion_09_minimal_polynomials(report):
    p = amb.ambi_closed_form()
    checks = check_all_table3(p, amb.ambi_metrics(p))
    tb = math.tan(p.beta)
    cubic = abs(4 * tb ** 3 + 3 * tb - 1)
    rows = {c.check for c in checks}
    ok = all(c.passed for c in checks) and len(rows) == 12 and cubic <= 1e-13
    assert report(9, ok, f"{sum(c.passed for c in checks)}/{len(checks)} rows pass, "
                         f"4x^3+3x-1 at tan(beta) {cubic:.1e}")


def test_criterion_10_curves(report):
    p = amb.ambi_closed_form()
    curve_checks = [check_curve_membership(p, k, samples=200) for k in CURVE_SEGMENTS + ARC_SEGMENTS]
    declared = {SIGMA[4].curve, SIGMA[5].curve, SIGMA[9].curve, SIGMA[18].curve}
    worst = max(c.value for c in curve_checks)
    focal = focal_distance_check(p, amb.ambi_metrics(p))
    suite, dt = _timed(run_suite)
    ok = (all(c.passed and c.value <= 1e-7 for c in curve_checks) and declared == {"P", "Q", "R"}
          and focal.passed and suite.passed and dt < 10.0)
    assert report(10, ok, f"12 pieces max residual {worst:.1e} (1e-7), focal err {focal.residual:.1e}, "
                          f"full verify {len(suite.checks)} checks {'pass' if suite.passed else 'FAIL'} "
                          f"in {dt:.2f}s (< 10s)")


def test_criterion_11_properties(report, ambi, ambi_path, sigma_shape, gerver_shape):
    lr, ud = symmetry_errors(sigma_shape, ambi.kappa61)
    sym_ok = max(lr, ud) <= 3 / sigma_shape.n_angles
    areas = [symmetrize_ambidextrous(build_shape(ambi_path, SweepConfig(n))).area_polygon
             for n in (64, 128, 256, 512)]
    mono = all(a > b for a, b in zip(areas, areas[1:]))
    labels = [s.label for s in sigma_shape.boundary_segments]
    sigma_ok = len(labels) == 18 and sigma_order(labels) == sigma_labels()
    curves = sum(s.is_curve for s in gerver_shape.boundary_segments)
    walls = len(gerver_shape.boundary_segments) - curves
    ok = sym_ok and mono and sigma_ok and (curves, walls) == (15, 3)
    assert report(11, ok, f"symmetry {lr:.1e}/{ud:.1e} (<= {3 / sigma_shape.n_angles:.1e}), "
                          f"monotone areas {mono}, sigma pieces {len(labels)}, "
                          f"gerver {curves} curved + {walls} straight")
