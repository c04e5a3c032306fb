"""Odd-only (px+q) maps: trajectories, cycle catalogs, certified bounds and
minimal-m searches. Integers of any size are accepted and returned as ints."""

from ._cyclebound import (
    BoundCheck,
    CycleboundError,
    CycleRecord,
    CycleSearchReport,
    CycleSweep,
    LoopClass,
    MinMResult,
    NearTie,
    StepRecord,
    Trajectory,
    alpha_bound,
    beta_bound,
    canonical_a_min,
    check_sandwich,
    classify,
    coefficient_cm,
    enumerate_cycles,
    exact_bound_check,
    find_cycle_from,
    log2_frac,
    make_cycle,
    min_m_alpha,
    min_m_beta_scan,
    rhs_threshold,
    t_step,
    t_trajectory,
    verify_linear_form,
    verify_product_identity,
)

__all__ = [name for name in dir() if not name.startswith("_")]
