"""Orthogonal projection onto rational surfaces."""

from ._normalproj import (
    DegeneracyError,
    DomainError,
    Error,
    FormatError,
    MatrixRep,
    NonFiniteFiber,
    PoleError,
    Projection,
    SpaceKind,
    Surface,
    admissible_degree,
    build,
    eddegree,
    gradient_D,
    load_matrix,
    load_surface,
    oracle_project,
    orthogonality_residual,
    project,
    random_surface,
    segre_surface,
    surface_from_json,
    unit_sphere,
)

__all__ = [
    "DegeneracyError",
    "DomainError",
    "Error",
    "FormatError",
    "MatrixRep",
    "NonFiniteFiber",
    "PoleError",
    "Projection",
    "SpaceKind",
    "Surface",
    "admissible_degree",
    "build",
    "eddegree",
    "gradient_D",
    "load_matrix",
    "load_surface",
    "oracle_project",
    "orthogonality_residual",
    "project",
    "random_surface",
    "segre_surface",
    "surface_from_json",
    "unit_sphere",
]
