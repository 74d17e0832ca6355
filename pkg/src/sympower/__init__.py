"""Symmetric powers of finite free resolutions over polynomial rings."""

from .betti import (
    BettiTable,
    BoundReport,
    beh_check,
    betti_formula,
    betti_pd1,
    betti_pd2,
    betti_table,
    bound_report,
    expected_pd,
    fiber_bound,
    lower_bound,
    rees_mu,
    upper_bound,
)
from .groebner import GradeError, GradeResult, GroebnerBasis, buchberger, grade, krull_dimension
from .matrix import Ideal, PolyMatrix, ResourceGuardError, determinant, minors_ideal, rank_over_fraction_field
from .poly import Polynomial, PolynomialError, RingConfig, constant_term, format_polynomial, parse_polynomial, poly_arith
from .resolution import (
    FreeResolution,
    ResolutionError,
    ResolutionFormatError,
    defect_ranks,
    koszul_resolution,
    load_resolution,
)
from .swcheck import SWReport, check_swj, j_feasible_range, pd1_grade_criterion
from .sympow import (
    CharacteristicError,
    Composition,
    SymPowerComplex,
    assemble_complex,
    build_A_map,
    build_B_map,
    component_spec,
    divided_rank,
    enumerate_compositions,
    expected_length,
    verify_dd_zero,
    verify_minimal,
)


def fixture_path(name: str):
    """Path of a bundled resolution file, e.g. ``fixture_path("squarefree_pd2")``."""
    from importlib.resources import files

    return files(__name__) / "fixtures" / f"{name}.json"
