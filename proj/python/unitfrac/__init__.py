"""Exact unit-fraction decompositions a/n = 1/x + 1/y + 1/z."""

from ._core import (
    Certificate,
    CoverageReport,
    MordellReport,
    ScanConfig,
    cli,
    coverage_scan,
    delta_positive_bounds,
    emit,
    explore_t_param,
    fixture_ids,
    formula_one_at,
    formula_one_scan,
    formula_two_at,
    formula_two_scan,
    isqrt,
    mordell_is_exception,
    mordell_scan,
    perfect_square_root,
    q_poly,
    regress_fixture,
    square_scan_fixed_x,
    trivial_decompose,
    unit_fraction_sum,
    verify,
    vieta_solve,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
