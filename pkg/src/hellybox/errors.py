"""Exception hierarchy and enumeration guards."""

from __future__ import annotations

import os


class HellyError(Exception):
    """Base class for all library errors."""


class DomainError(HellyError, ValueError):
    """An argument lies outside the domain of the operation."""


class ScaleError(HellyError):
    """An enumeration would exceed its configured guard."""


class PredicateViolation(HellyError):
    """A geometric precondition (e.g. convex position) does not hold."""


class ConstructionError(HellyError):
    """A construction cannot be completed with the given parameters."""


GUARD_ENV = "HELLY_SCALE_GUARD"


def check_guard(actual: int, limit: int, what: str) -> None:
    """Raise ScaleError if ``actual`` exceeds ``limit``.

    ``HELLY_SCALE_GUARD`` replaces every limit with its integer value; ``0``
    disables guards entirely. Both are unsafe: runtimes are unbounded.
    """
    override = os.environ.get(GUARD_ENV)
    if override is not None:
        limit = int(override)
        if limit <= 0:
            return
    if actual > limit:
        raise ScaleError(f"{what}: {actual} exceeds guard {limit}")
