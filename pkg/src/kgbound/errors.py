"""Exception taxonomy for kgbound.

Physics-domain errors (invalid regime, no such state) are distinct from
numerical failures (iteration or quadrature breakdown) so callers and the
CLI can map them to different exit codes.
"""

from __future__ import annotations

__all__ = [
    "KGBoundError",
    "SupercriticalCoupling",
    "NotBound",
    "InvalidQuantumNumbers",
    "PoleError",
    "DegenerateRecurrence",
    "QuadratureFailure",
    "TailNotConverged",
    "StateNotFound",
    "NoConvergence",
    "SuperluminalBoost",
    "UnsupportedCombination",
    "ConfigError",
]


class KGBoundError(Exception):
    """Base class for all kgbound errors."""


class SupercriticalCoupling(KGBoundError):
    """Z*alpha >= l + 1/2: the quantum defect turns complex, no real bound level."""


class NotBound(KGBoundError):
    """Operation requires a bound state (E' < 0)."""


class InvalidQuantumNumbers(KGBoundError):
    """(n, l, m) outside 0 <= l <= n-1, |m| <= l."""


class PoleError(KGBoundError):
    """Gamma function evaluated at a nonpositive integer."""


class DegenerateRecurrence(KGBoundError):
    """Series recurrence denominator vanished."""


class QuadratureFailure(KGBoundError):
    """Normalization integral did not converge."""


class TailNotConverged(KGBoundError):
    """Samples have not decayed at the grid edge; enlarge r_max."""


class StateNotFound(KGBoundError):
    """No bound eigenvalue with the requested node count on this grid."""


class NoConvergence(KGBoundError):
    """Self-consistency iteration exhausted its budget."""


class SuperluminalBoost(KGBoundError):
    """|v| >= c requested for a frame boost."""


class UnsupportedCombination(KGBoundError):
    """Potential parts incompatible with the requested equation mode."""


class ConfigError(KGBoundError):
    """Malformed or unknown CLI/config input."""
