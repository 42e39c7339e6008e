"""Capacity-constrained robust consensus design."""

from ._robcons import (
    RobconsError,
    algorithm1,
    allocate,
    analytic_variance,
    brute_force,
    check_feasibility,
    find_cmad,
    find_mad,
    hstar,
    reproduce_table,
    simulate,
    solve_complete,
    validate,
)

__all__ = [
    "RobconsError",
    "algorithm1",
    "allocate",
    "analytic_variance",
    "brute_force",
    "check_feasibility",
    "find_cmad",
    "find_mad",
    "hstar",
    "reproduce_table",
    "simulate",
    "solve_complete",
    "validate",
]
