"""Size guards shared by the enumeration, DP and grid routines.

Every potentially explosive computation checks its cost against a named
limit before starting. The CLI can lift all limits at once with
``--unsafe-raise-guard``; library callers use :func:`raised`.
"""
from __future__ import annotations

import contextlib
import math

DEFAULT_LIMITS = {
    "enumeration": 10**8,   # lattice points yielded by a brute-force enumeration
    "dp_budget": 10**9,     # elementary bigint operations in a budget DP
    "box": 5 * 10**6,       # cells in a dense GridFunction
    "ehrhart_dim": 64,      # dimension for exact Ehrhart expansion
    "multiplier": 10**9,    # complex multiply-adds in a multiplier DP
}

LIMITS = dict(DEFAULT_LIMITS)


class GuardError(RuntimeError):
    """A named size guard was exceeded."""

    def __init__(self, guard: str, value, limit):
        self.guard = guard
        self.value = value
        self.limit = limit
        super().__init__(f"guard '{guard}' exceeded: {value} > {limit}")

    def __reduce__(self):
        # keep the structured fields when crossing a process boundary
        return (type(self), (self.guard, self.value, self.limit))


def check(guard: str, value) -> None:
    limit = LIMITS[guard]
    if value > limit:
        raise GuardError(guard, value, limit)


@contextlib.contextmanager
def raised():
    """Temporarily disable every guard."""
    saved = dict(LIMITS)
    LIMITS.update({k: math.inf for k in LIMITS})
    try:
        yield
    finally:
        LIMITS.clear()
        LIMITS.update(saved)
