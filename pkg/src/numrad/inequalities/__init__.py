"""Registry of numerical-radius inequalities and vector identities."""

from . import registry as _registry  # noqa: F401  (populates REGISTRY)
from .core import (
    DEFAULT_GRID_AXES,
    REGISTRY,
    Checker,
    CheckParams,
    CheckResult,
    Link,
    Workspace,
    applicable,
    build_plan,
    check,
    check_all,
    default_grid,
    resolve,
    run_plan,
)

__all__ = [
    "DEFAULT_GRID_AXES",
    "REGISTRY",
    "Checker",
    "CheckParams",
    "CheckResult",
    "Link",
    "Workspace",
    "applicable",
    "build_plan",
    "check",
    "check_all",
    "default_grid",
    "resolve",
    "run_plan",
]
