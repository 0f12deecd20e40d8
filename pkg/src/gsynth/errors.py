"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SynthError(Exception):
    """Base class for all errors raised by gsynth."""


class InputError(SynthError, ValueError):
    """Malformed instance: bad indices, wrong lengths, invalid JSON."""


class CapacityError(SynthError):
    """Instance exceeds an enumeration cap."""


class PreconditionError(SynthError):
    """A standing hypothesis of the requested operation does not hold."""


class DefectError(SynthError):
    """A constructed object failed its independent verification.

    Never expected on valid input; signals a bug rather than infeasibility.
    """


class Infeasible(SynthError):
    """Raised by constructors when the instance has no solution.

    ``certificate`` carries the violated inequality (a ``Certificate``,
    a violating node set, or a structured dict, depending on the module).
    """

    def __init__(self, certificate, message: str | None = None):
        self.certificate = certificate
        super().__init__(message or f"infeasible: {certificate}")
