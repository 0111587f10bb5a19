"""Exception hierarchy for the workbench.

Three kinds of failure are kept apart on purpose: bad input (schema,
dimension, guard violations), honest negative verdicts (a property the
input simply does not have), and invariant breakage inside a verified
algorithm (these carry full diagnostics and are never silently patched).
"""

from __future__ import annotations


class DIntervalError(Exception):
    """Base class for all workbench errors."""


class DimensionMismatchError(DIntervalError):
    """Objects built over different numbers of levels were combined."""


class GroundSetMismatchError(DIntervalError):
    """Traces over different ground point sets were combined."""


class GuardExceededError(DIntervalError):
    """An enumeration guard was hit; the limit is echoed in the message."""

    def __init__(self, what: str, size: int, limit: int):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds guard limit {limit}")


class SchemaError(DIntervalError):
    """Instance document violates the schema; ``path`` locates the field."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")


class NotAFaceError(DIntervalError):
    """The requested simplex is not a face of the complex."""


class NotFreeError(DIntervalError):
    """A collapse was attempted at a non-free face."""

    def __init__(self, face, maximal_faces):
        self.face = face
        self.maximal_faces = tuple(maximal_faces)
        super().__init__(
            f"face {sorted(face)} lies in {len(self.maximal_faces)} maximal faces"
        )


class PreconditionError(DIntervalError):
    """A checked precondition failed; ``witness`` shows a violating object."""

    def __init__(self, message: str, witness=None):
        self.witness = witness
        super().__init__(message)


class TheoremViolationError(DIntervalError):
    """A verified claim failed at runtime; carries the counterexample."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class SweepInvariantError(TheoremViolationError):
    """The sweep collapse hit a state where a step assertion fails.

    Diagnostics carry the family, the selected face and both complexes so
    the instance can be replayed and studied rather than papered over.
    """
