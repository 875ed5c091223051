"""Numerical range and numerical radius laboratory.

Certified numerical radius computation, spectral calculus for positive
matrices, polar and Aluthge transforms, and a registry of numerical-radius
inequalities exercised by a seeded random sweep.
"""

from .errors import NumradError
from .inequalities import CheckParams, CheckResult, applicable, check, check_all, default_grid
from .linalg import classify, operator_norm
from .numrange import (
    RadiusEstimate,
    numerical_radius,
    numerical_range_boundary,
    radius_dense_oracle,
    rayleigh,
)
from .transforms import aluthge, aluthge_general, heinz_mean, polar_decompose

__version__ = "0.1.0"

__all__ = [
    "NumradError",
    "CheckParams",
    "CheckResult",
    "applicable",
    "check",
    "check_all",
    "default_grid",
    "classify",
    "operator_norm",
    "RadiusEstimate",
    "numerical_radius",
    "numerical_range_boundary",
    "radius_dense_oracle",
    "rayleigh",
    "aluthge",
    "aluthge_general",
    "heinz_mean",
    "polar_decompose",
]
