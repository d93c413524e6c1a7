"""Exception types shared across the toolkit."""
from __future__ import annotations


class PactError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(PactError):
    """An axiom or precondition failed, with a machine-readable witness.

    ``axiom`` is a stable tag (e.g. ``"associativity"``, ``"pa2"``,
    ``"domain-not-open"``) and ``witness`` holds the offending labels, so a
    caller can replay the violation against the structure that produced it.
    """

    def __init__(self, axiom: str, witness: tuple = (), message: str = ""):
        self.axiom = axiom
        self.witness = witness
        text = message or f"violated: {axiom}"
        if witness:
            text = f"{text} (witness {witness!r})"
        super().__init__(text)


class BoundExceeded(PactError):
    """An enumeration or construction exceeds its configured size limit."""

    def __init__(self, what: str, limit: int, needed: int):
        self.what = what
        self.limit = limit
        self.needed = needed
        super().__init__(f"{what}: needs {needed}, bound is {limit}")


class InstanceError(PactError):
    """Schema or cross-reference problem in an instance document."""

    def __init__(self, location: str, message: str):
        self.location = location
        super().__init__(f"at {location}: {message}")


class InternalCheckError(PactError):
    """A trusted invariant failed; this indicates a bug, not a bad instance."""
