"""Moving-sofa machinery: rotation paths, contact paths, the optimality ODEs,
solvers for Gerver's sofa and the ambidextrous sofa, constructive shape
building and numerical checks of the algebraic claims."""

from .ambidextrous import (
    AmbiMetrics, AmbiParams, ambi_closed_form, ambi_metrics, ambi_rotation_path,
    compute_ambi_area, compute_ambi_length, solve_ambi_numeric,
)
from .gerver import (
    GerverClassicParams, GerverParams, gerver_rotation_path, solve_gerver, solve_gerver_classic,
)
from .paths import RotationPath, contact_paths, hammersley_path
from .shape import (
    SofaShape, SweepConfig, area_by_boundary, attribute_boundary, build_shape,
    symmetrize_ambidextrous,
)

__version__ = "0.1.0"
