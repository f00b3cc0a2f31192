from __future__ import annotations


class NearPlanarError(Exception):
    """Base class for all library errors."""


class EGFParseError(NearPlanarError):
    def __init__(self, line: int, cause: str):
        self.line = line
        self.cause = cause
        super().__init__(f"line {line}: {cause}")


class ValidationError(NearPlanarError):
    def __init__(self, issues: list[str]):
        self.issues = list(issues)
        super().__init__("; ".join(self.issues) if self.issues else "invalid graph")


class PreconditionError(NearPlanarError):
    pass


class InternalError(NearPlanarError):
    """A self-check failed (certificate re-verification, inconsistent state)."""
