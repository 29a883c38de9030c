import math

import numpy as np
import pytest

from sofa import ambidextrous as amb
from sofa.geometry import Polygon
from sofa.paths import custom_path, hammersley_path
from sofa.reference import AMBI_AREA, GERVER_AREA, HAMMERSLEY_AREA_STAR
from sofa.shape import (
    DegeneratePathError, OpenBoundaryError, SofaShape, SweepConfig, area_by_boundary,
    attribute_boundary, build_shape, circle_merged_count, containment_error, hammersley_family,
    segment_summary, symmetrize_ambidextrous, symmetry_errors, with_boundary_area,
)

SIGMA_CCW = ["A[2]", "A[3]", "rho(B)[3]", "rho(B)[2]", "rho(x)[2]", "rho(D)[2]", "rho(D)[1]",
             "C[1]", "C[2]", "rho(C)[2]", "rho(C)[1]", "D[1]", "D[2]", "x[2]", "B[2]", "B[3]",
             "rho(A)[3]", "rho(A)[2]"]
GERVER_CCW = ["A[2]", "A[3]", "A[4]", "A[5]", "wall[y=1]", "C[1]", "C[2]", "C[3]", "C[4]",
              "wall[y=0]", "D[1]", "D[2]", "x[4]", "x[3]", "x[2]", "B[4]", "B[5]", "wall[y=0]"]
HAMMERSLEY_CCW = ["A[1]", "wall[y=1]", "C[1]", "wall[y=0]", "x[1]", "wall[y=0]"]


def test_sweep_config():
    assert len(SweepConfig(8).angles()) >= 8
    with pytest.raises(ValueError):
        SweepConfig(4)


def test_hammersley_polygon_area(hammersley_shape):
    assert abs(hammersley_shape.area_polygon - HAMMERSLEY_AREA_STAR) <= 2e-3
    assert hammersley_shape.area_polygon >= HAMMERSLEY_AREA_STAR - 1e-9


@pytest.mark.parametrize("r, area, n", [(0.0, math.pi / 2, 512), (1.0, 2.0, 1024)])
def test_hammersley_extremes(r, area, n):
    shape = attribute_boundary(build_shape(hammersley_path(r), SweepConfig(n)))
    assert abs(shape.area_polygon - area) <= 2e-3
    assert abs(area_by_boundary(shape) - area) <= 1e-9


def test_polygon_error_is_first_order():
    errs = [build_shape(hammersley_path(1.0), SweepConfig(n)).area_polygon - 2.0 for n in (256, 512)]
    assert errs[1] > 0
    assert 1.8 <= errs[0] / errs[1] <= 2.2


def test_hammersley_family():
    path, area = hammersley_family(2 / math.pi)
    assert abs(area - HAMMERSLEY_AREA_STAR) <= 1e-14
    assert hammersley_family(0.0)[1] == pytest.approx(math.pi / 2)
    assert hammersley_family(1.0)[1] == pytest.approx(2.0)
    assert path.name.startswith("hammersley")


def test_gerver_polygon_area(gerver_path):
    shape = build_shape(gerver_path, SweepConfig(1024))
    assert abs(shape.area_polygon - GERVER_AREA) <= 1e-3


def test_sigma_polygon_area(sigma_shape):
    assert abs(sigma_shape.area_polygon - AMBI_AREA) <= 1e-3
    assert sigma_shape.symmetric


@pytest.mark.parametrize("which", ["hammersley", "gerver", "ambi"])
def test_area_decreases_with_n(which, gerver_path, ambi_path):
    path = {"hammersley": hammersley_path(2 / math.pi), "gerver": gerver_path,
            "ambi": ambi_path}[which]
    areas = [build_shape(path, SweepConfig(n)).area_polygon for n in (128, 256, 512)]
    assert areas[0] > areas[1] > areas[2]


def test_boundary_areas(sigma_shape, gerver_shape, hammersley_shape):
    assert abs(area_by_boundary(sigma_shape) - AMBI_AREA) <= 1e-9
    assert abs(area_by_boundary(gerver_shape) - GERVER_AREA) <= 1e-6
    assert abs(area_by_boundary(hammersley_shape) - HAMMERSLEY_AREA_STAR) <= 1e-9
    assert with_boundary_area(hammersley_shape).area_boundary == pytest.approx(HAMMERSLEY_AREA_STAR)


def test_attribution_fixtures(sigma_shape, gerver_shape, hammersley_shape):
    assert segment_summary(sigma_shape) == SIGMA_CCW
    assert segment_summary(gerver_shape) == GERVER_CCW
    assert segment_summary(hammersley_shape) == HAMMERSLEY_CCW
    for s in (sigma_shape, gerver_shape, hammersley_shape):
        assert s.flags == ()


def test_gerver_segment_kinds(gerver_shape):
    kinds = [s.is_curve for s in gerver_shape.boundary_segments]
    assert kinds.count(True) == 15 and kinds.count(False) == 3


def test_sigma_symmetry(ambi, sigma_shape):
    lr, ud = symmetry_errors(sigma_shape, ambi.kappa61)
    assert lr <= 3 / sigma_shape.n_angles
    assert ud <= 3 / sigma_shape.n_angles


def test_circle_merges(ambi, sigma_shape):
    assert circle_merged_count(sigma_shape, amb.focal_points(ambi)) == 14


def test_curves_inside_polygon(sigma_shape, gerver_shape, hammersley_shape):
    for s in (sigma_shape, gerver_shape, hammersley_shape):
        assert containment_error(s) <= 1e-9


def test_symmetrize_fixed_points():
    square = SofaShape.from_polygon(Polygon.box(0, 0, 1, 1))
    out = symmetrize_ambidextrous(square)
    assert abs(out.area_polygon - 1.0) <= 1e-12
    assert np.allclose(sorted(map(tuple, out.polygon.vertices)), [(0, 0), (0, 1), (1, 0), (1, 1)])
    tall = SofaShape.from_polygon(Polygon.from_points([(0, -1), (2, 0.5), (0, 2), (-1, 0.5)]))
    assert abs(symmetrize_ambidextrous(tall).area_polygon - tall.area_polygon) <= 1e-9


def test_symmetrize_halves_asymmetric_input():
    low = SofaShape.from_polygon(Polygon.box(0, 0, 1, 0.75))
    assert symmetrize_ambidextrous(low).area_polygon == pytest.approx(0.5)


def test_degenerate_path():
    far = custom_path(lambda t, k: np.array([5.0, 5.0]) if k == 0 else np.zeros(2), check=False)
    with pytest.raises(DegeneratePathError):
        build_shape(far, SweepConfig(16))


def test_boundary_errors(hammersley_shape):
    bare = build_shape(hammersley_path(0.5), SweepConfig(64))
    with pytest.raises(OpenBoundaryError):
        area_by_boundary(bare)
    with pytest.raises(ValueError):
        attribute_boundary(SofaShape.from_polygon(Polygon.box(0, 0, 1, 1)))
    flagged = attribute_boundary(hammersley_shape, threshold=1e-12)
    assert flagged.flags
    with pytest.raises(OpenBoundaryError):
        area_by_boundary(flagged)
