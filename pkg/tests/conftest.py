import math

import pytest

from sofa import ambidextrous as amb
from sofa import gerver as ger
from sofa.paths import hammersley_path
from sofa.shape import SweepConfig, attribute_boundary, build_shape, symmetrize_ambidextrous


@pytest.fixture(scope="session")
def ambi():
    return amb.ambi_closed_form()


@pytest.fixture(scope="session")
def ambi_path(ambi):
    return amb.ambi_rotation_path(ambi)


@pytest.fixture(scope="session")
def gerver():
    return ger.solve_gerver()


@pytest.fixture(scope="session")
def gerver_path(gerver):
    return ger.gerver_rotation_path(gerver)


@pytest.fixture(scope="session")
def sigma_shape(ambi_path):
    """Symmetrized and attributed ambidextrous shape at n = 512."""
    s = build_shape(ambi_path, SweepConfig(512))
    return attribute_boundary(symmetrize_ambidextrous(s))


@pytest.fixture(scope="session")
def gerver_shape(gerver_path):
    return attribute_boundary(build_shape(gerver_path, SweepConfig(512)))


@pytest.fixture(scope="session")
def hammersley_shape():
    return attribute_boundary(build_shape(hammersley_path(2 / math.pi), SweepConfig(512)))
