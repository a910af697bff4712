"""Shared violation record and exception types."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Violation:
    """One broken rule on one entity. Violations are data, not exceptions."""

    entity: str  # e.g. "contact:c3", "edge:c1-c2", "lane:work", "sector_config"
    rule: str  # stable machine token, e.g. "empty_name"
    message: str

    def to_dict(self) -> dict:
        return {"entity": self.entity, "rule": self.rule, "message": self.message}


class SodiaError(Exception):
    """Base class for all domain errors."""


class ValidationFailedError(SodiaError):
    """An operation was handed data that fails validation."""

    def __init__(self, violations: list[Violation]):
        self.violations = violations
        summary = "; ".join(f"{v.entity}: {v.message}" for v in violations[:5])
        if len(violations) > 5:
            summary += f" (+{len(violations) - 5} more)"
        super().__init__(f"validation failed: {summary}")


class NotFoundError(SodiaError):
    """A referenced entity (case, version, contact, event, sector) does not exist."""

    def __init__(self, kind: str, ident: str):
        self.kind = kind
        self.ident = ident
        super().__init__(f"{kind} not found: {ident!r}")


class EgoReservedError(SodiaError):
    """The canvas origin is reserved for the ego mark."""


class OutsideCanvasError(SodiaError):
    """A canvas point lies outside the plot disc."""


class MalformedDocumentError(SodiaError):
    """A byte stream is not a well-formed case document."""


class UnsupportedSchemaError(SodiaError):
    """A document declares a schema version newer than this build supports."""

    def __init__(self, found: int, supported: int):
        self.found = found
        self.supported = supported
        super().__init__(f"schema version {found} not supported (max {supported})")


class InvalidCaseError(ValidationFailedError):
    """A well-formed document violates case invariants."""


class RevisionConflictError(SodiaError):
    """A write carried a stale revision."""

    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"stale revision: expected {expected}, case is at {actual}")


class DuplicateCaseError(SodiaError):
    def __init__(self, case_id: str):
        self.case_id = case_id
        super().__init__(f"case already exists: {case_id!r}")
