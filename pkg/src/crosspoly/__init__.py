"""Exact and asymptotic lattice-point counts in l1 balls, with a discrete-averaging testbed."""
from .exact_counts import (
    bounded_ball_count,
    composition_class_count,
    delannoy,
    ehrhart_polynomial,
    sphere_count,
    support_shell_count,
)
from .guards import GuardError

__version__ = "0.1.0"
