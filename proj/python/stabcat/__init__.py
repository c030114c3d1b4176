"""Tate cohomology, duality and transfer for symmetric algebras over prime fields."""

from ._stabcat import (
    Error,
    UsageError,
    ValidationError,
    engine_version,
    ext_dimensions,
    fixture_names,
    hh_dimensions,
    search_negative,
    set_free_covers,
    validate,
    verify,
)

__all__ = [
    "Error",
    "UsageError",
    "ValidationError",
    "engine_version",
    "ext_dimensions",
    "fixture_names",
    "hh_dimensions",
    "search_negative",
    "set_free_covers",
    "validate",
    "verify",
]
