"""Ant Colony System for the Team Orienteering Problem with Time Windows."""

from ._toptw import (
    AcsParams,
    BoundsError,
    ConfigError,
    ContractViolation,
    ExactResult,
    Instance,
    LocalSearchParams,
    Node,
    ParseError,
    RouteSet,
    RunReport,
    SizeError,
    SolveResult,
    ValidationResult,
    brute_force,
    load_instance,
    parse_cordeau,
    parse_solomon,
    solve,
    validate_solution,
    write_solomon,
    write_solution,
)

__all__ = [
    "AcsParams",
    "BoundsError",
    "ConfigError",
    "ContractViolation",
    "ExactResult",
    "Instance",
    "LocalSearchParams",
    "Node",
    "ParseError",
    "RouteSet",
    "RunReport",
    "SizeError",
    "SolveResult",
    "ValidationResult",
    "brute_force",
    "load_instance",
    "parse_cordeau",
    "parse_solomon",
    "solve",
    "validate_solution",
    "write_solomon",
    "write_solution",
]
