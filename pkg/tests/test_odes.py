import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sofa.geometry import HALF_PI, mu, nu, rotation
from sofa.odes import (
    CASE_GAMMA, J, SolutionCoefficients, case_for_gamma, ode_forcing, ode_matrix,
    ode_matrix_generated, ode_rhs, reduced_system, sol_eval, verify_sol_satisfies_ode,
)
from sofa.paths import contact_velocities
from sofa.reference import GERVER_TABLE

coeff = st.floats(-3, 3)


@pytest.mark.parametrize("case, t, xp, expected", [
    (3, 0.0, (0, 0), (-1.0, -1.0)),
    (1, 0.0, (1, 0), (-1.0, 1.5)),
    (6, HALF_PI, (0, 0), (0.5, -0.5)),
])
def test_ode_rhs_examples(case, t, xp, expected):
    assert np.allclose(ode_rhs(case, t, xp), expected, atol=1e-15)


def test_sol_examples():
    c = SolutionCoefficients((0.0, 0.0), 0.3, -0.7)
    assert np.allclose(sol_eval(3, SolutionCoefficients(), 0.0), 0.0)
    assert np.allclose(sol_eval(3, c, 0.0), (0.3, -0.7))
    t = 0.4
    assert np.allclose(sol_eval(3, c, t), rotation(t) @ (0.3 - t, -0.7 + t))
    assert np.allclose(sol_eval(6, SolutionCoefficients(), 0.0), (-1.0, -1.0))
    assert np.allclose(sol_eval(6, SolutionCoefficients(), t), rotation(t) @ (-1.0, -1.0))


def test_sol1_gerver_anchor():
    g = GERVER_TABLE
    co = SolutionCoefficients((g["kappa11"], g["kappa12"]), g["a1"], g["a2"])
    assert np.max(np.abs(sol_eval(1, co, 0.0))) <= 1e-15


def test_case_gamma_is_a_bijection():
    assert len(set(CASE_GAMMA.values())) == 6
    for case, gamma in CASE_GAMMA.items():
        assert case_for_gamma(gamma) == case
        assert case_for_gamma("".join(sorted(gamma))) == case
    with pytest.raises(ValueError):
        case_for_gamma("AB")


@pytest.mark.parametrize("case", range(1, 7))
@pytest.mark.parametrize("t", np.linspace(0, HALF_PI, 7))
def test_printed_matrix_matches_generated(case, t):
    assert np.allclose(ode_matrix(case, t), ode_matrix_generated(case, t), atol=1e-15)


@pytest.mark.parametrize("bad", [0, 7])
def test_invalid_case(bad):
    for f in (lambda: ode_matrix(bad, 0.1), lambda: ode_matrix_generated(bad, 0.1),
              lambda: ode_forcing(bad)):
        with pytest.raises(ValueError):
            f()


@settings(max_examples=40)
@given(st.integers(1, 6), st.floats(0.05, HALF_PI - 0.05), coeff, coeff)
def test_reduced_system(case, t, y1, y2):
    """y = R_{-t} x' turns the ODE into the constant-coefficient system y' = T y + v."""
    T, v = reduced_system(case)
    y = np.array([y1, y2])
    xp = rotation(t) @ y
    xpp = ode_rhs(case, t, xp)
    # d/dt (R_{-t} x') = R_{-t} x'' - J R_{-t} x'
    dy = rotation(-t) @ xpp - J @ y
    assert np.allclose(dy, T @ y + v, atol=1e-12)


@settings(max_examples=60)
@given(st.integers(1, 6), coeff, coeff, coeff, coeff)
def test_solutions_satisfy_odes(family, k1, k2, c1, c2):
    res, fd = verify_sol_satisfies_ode(family, SolutionCoefficients((k1, k2), c1, c2), 12,
                                       return_fd=True)
    assert res <= 1e-9
    assert fd <= 1e-6


@pytest.mark.parametrize("family", [2, 3, 6])
def test_solution_families_seeded(family):
    rng = np.random.default_rng(family)
    for _ in range(20):
        k = rng.uniform(-2, 2, 4)
        co = SolutionCoefficients((k[0], k[1]), k[2], k[3])
        res, fd = verify_sol_satisfies_ode(family, co, return_fd=True)
        assert res <= 1e-9 and fd <= 1e-6


@settings(max_examples=30)
@given(coeff, coeff, st.floats(0.05, HALF_PI - 0.05))
def test_frozen_contacts(c1, c2, t):
    co = SolutionCoefficients((0.2, -0.1), c1, c2)
    v1 = contact_velocities(sol_eval(1, co, t, 1), sol_eval(1, co, t, 2), t)
    v5 = contact_velocities(sol_eval(5, co, t, 1), sol_eval(5, co, t, 2), t)
    assert np.max(np.abs(v1["A"])) <= 1e-9
    assert np.max(np.abs(v5["C"])) <= 1e-9


def test_semicircle_family():
    co = SolutionCoefficients((0.0, 0.0), 0.5, 0.0)
    t = math.pi / 4
    assert np.allclose(sol_eval(7, co, t), (-0.5, 0.5))
    h = 1e-6
    fd = (sol_eval(7, co, t + h) - sol_eval(7, co, t - h)) / (2 * h)
    assert np.allclose(fd, sol_eval(7, co, t, 1), atol=1e-8)


def test_sol_eval_errors():
    with pytest.raises(ValueError):
        sol_eval(8, SolutionCoefficients(), 0.1)
    with pytest.raises(ValueError):
        sol_eval(1, SolutionCoefficients(), 0.1, order=3)
    with pytest.raises(ValueError):
        verify_sol_satisfies_ode(1, SolutionCoefficients(), samples=5)
    with pytest.raises(ValueError):
        SolutionCoefficients((math.inf, 0.0))


def test_frame_helpers_agree_with_rotation():
    for t in (0.0, 0.3, HALF_PI):
        assert np.allclose(rotation(t)[:, 0], mu(t))
        assert np.allclose(rotation(t)[:, 1], nu(t))
