"""Reflected maxmin copula toolkit: constructions, iterates, closed-form
limits, dependence measures and reproducible sampling."""

from rmmcop._core import (  # noqa: F401
    BivariateCopula,
    Generator,
    MMGenerator,
    MMKind,
    NCopula,
    ParsedCopula,
    SampleBatch,
    SpecError,
    builtin,
    clayton,
    efgm,
    estimate_measures,
    export_csv,
    flip_first,
    flip_second,
    flip_vars,
    from_bivariate,
    from_mm,
    kendall_tau,
    m,
    m_n,
    mm,
    mm_iter,
    mm_limit,
    mm_n,
    n_box_volume,
    parse_spec,
    pi,
    pi_n,
    quadrant_class,
    rmm,
    rmm_3,
    rmm_iter,
    rmm_limit,
    rmm_n,
    sample2,
    sample3,
    spearman_rho,
    tail_coefficients,
    to_mm,
    validate_copula,
    w,
)

__version__ = "0.1.0"
