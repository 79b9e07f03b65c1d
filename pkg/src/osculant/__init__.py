"""Exact osculating spaces of polynomially parametrized projective varieties."""

from .exactlinalg import QMatrix, Subspace, quotient_residual, rank, rref, span_contains, span_equal
from .geometry import (
    OsculatingProfile,
    Parametrization,
    SamplePlan,
    generic_osculating_dim,
    joint_osculating_span_dim,
    osculating_dim,
    osculating_matrix,
    osculating_variety_dim,
    profile,
    variety_span_dim,
)
from .polynomial import Polynomial, parse

__all__ = [
    "OsculatingProfile",
    "Parametrization",
    "Polynomial",
    "QMatrix",
    "SamplePlan",
    "Subspace",
    "generic_osculating_dim",
    "joint_osculating_span_dim",
    "osculating_dim",
    "osculating_matrix",
    "osculating_variety_dim",
    "parse",
    "profile",
    "quotient_residual",
    "rank",
    "rref",
    "span_contains",
    "span_equal",
    "variety_span_dim",
]
