"""Exception types and the shared size guard."""

import os
import warnings


class PerlabError(Exception):
    """Base class for library errors."""


class SizeGuardError(PerlabError, ValueError):
    """An exhaustive computation was requested beyond its supported size."""


class DomainError(PerlabError, ValueError):
    """A point lies outside the region where a closed form is valid."""


class PoleError(PerlabError, ArithmeticError):
    """Evaluation hit a pole of a local factor."""


class InvariantError(PerlabError, AssertionError):
    """An internal consistency check failed."""


def rank_limit(default):
    """Limit for exhaustive enumerations, optionally raised via PERLAB_MAX_RANK."""
    raw = os.environ.get("PERLAB_MAX_RANK")
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise SizeGuardError(f"PERLAB_MAX_RANK must be an integer, got {raw!r}")
    if value > default:
        warnings.warn(
            f"PERLAB_MAX_RANK={value} exceeds the tested limit {default}; results are unsupported",
            RuntimeWarning,
            stacklevel=3,
        )
    return value


def check_size(value, default, what):
    limit = rank_limit(default)
    if value > limit:
        raise SizeGuardError(f"{what}={value} exceeds the size guard {limit} (set PERLAB_MAX_RANK to override)")
