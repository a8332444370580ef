"""Hybrid finite-domain / continuous constraint solving with interval contractors."""

from ._core import (
    ContractorRegistry,
    ContractStatus,
    Interval,
    MalformedBounds,
    ModelError,
    ParseError,
    UnknownContractor,
    UsageError,
    binary,
    parse,
    solve_model,
    unary,
)

__all__ = [
    "ContractorRegistry",
    "ContractStatus",
    "Interval",
    "MalformedBounds",
    "ModelError",
    "ParseError",
    "UnknownContractor",
    "UsageError",
    "binary",
    "parse",
    "solve_model",
    "unary",
]
