import math

import numpy as np
import pytest

from sofa import ambidextrous as amb
from sofa.geometry import HALF_PI, mu
from sofa.paths import check_well_behaved, contact_paths, eval_path
from sofa.reference import AMBI_AREA, AMBI_LENGTH, AMBI_TABLE, relative_error


@pytest.mark.parametrize("name", list(AMBI_TABLE))
def test_closed_form_published_values(ambi, name):
    assert relative_error(ambi.as_dict()[name], AMBI_TABLE[name]) <= 1e-13


@pytest.mark.parametrize("name", list(AMBI_TABLE))
def test_numeric_matches_closed_form(ambi, name):
    numeric = amb.solve_ambi_numeric()
    assert relative_error(getattr(numeric, name), getattr(ambi, name)) <= 1e-12


def test_beta_equations(ambi):
    tb = math.tan(ambi.beta)
    assert abs(4 * tb ** 3 + 3 * tb - 1) <= 1e-13
    assert abs(amb.reduced_beta_equation(ambi.beta)) <= 1e-13
    assert abs(amb.assemble_ambi_residual(ambi.beta)[1]) <= 1e-12
    assert abs(amb.a1_radical() - ambi.a1) <= 1e-14


def test_area(ambi):
    area = amb.compute_ambi_area(ambi)
    assert abs(area - AMBI_AREA) <= 1e-11
    assert abs(area - amb.closed_form_area(ambi.beta)) <= 1e-11
    dm = area - ambi.beta
    assert abs(dm ** 3 + 3 * dm ** 2 - 8) <= 1e-10
    assert round(area, 5) == 1.64496


def test_length(ambi):
    lam = amb.compute_ambi_length(ambi)
    assert abs(lam - AMBI_LENGTH) <= 1e-12
    assert abs(lam - amb.length_radical()) <= 1e-13


def test_length_is_the_width_of_the_built_shape(sigma_shape):
    v = sigma_shape.polygon.vertices
    assert abs(np.ptp(v[:, 0]) - AMBI_LENGTH) <= 2.0 / sigma_shape.n_angles


def test_redundant_equations(ambi):
    red = amb.redundancy_residuals(amb.solve_ambi_numeric())
    assert set(red) == set(amb.REDUNDANT_EQUATIONS)
    assert max(abs(v) for v in red.values()) <= 1e-9
    assert max(abs(v) for v in amb.redundancy_residuals(ambi).values()) <= 1e-10


def test_path_structure(ambi, ambi_path):
    assert [s.family.value for s in ambi_path.segments] == [1, 6, 5]
    assert np.allclose(ambi_path.breakpoints, [0, ambi.beta, HALF_PI - ambi.beta, HALF_PI])
    assert ambi_path.is_c1(1e-10)
    assert np.max(np.abs(eval_path(ambi_path, 0.0))) <= 1e-15
    a, b = ambi_path.segments[0], ambi_path.segments[1]
    assert np.max(np.abs(a.eval(ambi.beta) - b.eval(ambi.beta))) <= 1e-12
    assert abs(a.eval(ambi.beta, 1) @ mu(ambi.beta)) <= 1e-12


def test_start_contact(ambi_path):
    assert np.allclose(contact_paths(ambi_path, 0.0).A, (1.0, 0.5), atol=1e-14)


def test_well_behaved(ambi_path):
    ts = [t for t in np.linspace(0, HALF_PI, 500) if not ambi_path.near_junction(t)]
    assert all(check_well_behaved(ambi_path, t) == [] for t in ts)


def test_focal_points(ambi):
    f1, f2 = amb.focal_points(ambi)
    assert abs(np.linalg.norm(f2 - f1) - AMBI_LENGTH / 2) <= 1e-12
    assert f1[1] == f2[1] == 0.5


def test_params_validation():
    with pytest.raises(ValueError):
        amb.AmbiParams(1.0, *([0.0] * 12))
    with pytest.raises(ValueError):
        amb.assemble_ambi_residual(-0.1)


def test_metrics_dict(ambi):
    m = amb.ambi_metrics(ambi)
    assert set(m.as_dict()) == {"area_delta", "length_lambda", "beta"}
