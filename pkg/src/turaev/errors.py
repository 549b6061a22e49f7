"""Exception types shared across the toolkit."""

from __future__ import annotations

from typing import NamedTuple


class GaussCodeError(Exception):
    """Base class for all toolkit errors."""


class CodeSyntaxError(GaussCodeError):
    """Raised when input text does not conform to the Gauss code grammar."""

    def __init__(self, position: int, expected: str, found: str = ""):
        self.position = position
        self.expected = expected
        self.found = found
        detail = f", found {found!r}" if found else ""
        super().__init__(f"syntax error at position {position}: expected {expected}{detail}")


class Violation(NamedTuple):
    rule: str
    subject: object  # label or position the rule failed on
    message: str


class ValidationError(GaussCodeError):
    """A structurally well-formed code that violates Gauss code invariants."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(v.message for v in self.violations))

    def has(self, rule: str) -> bool:
        return any(v.rule == rule for v in self.violations)


class PairingError(ValidationError):
    """Some label does not occur exactly twice."""


class SignMismatch(ValidationError):
    """The two occurrences of some label carry different signs."""


class NotConnected(GaussCodeError):
    pass


class EmptyComponent(GaussCodeError):
    pass


class GeneralizedCodeUnsupported(GaussCodeError):
    pass


class NotReduced(GaussCodeError):
    pass


class MovePreconditionFailed(GaussCodeError):
    """The rewrite pattern required by a move is absent at the given site."""

    def __init__(self, kind: str, detail: str):
        self.kind = kind
        self.detail = detail
        super().__init__(f"{kind}: {detail}")


class StaleReference(GaussCodeError):
    """An arc or position reference does not exist in the code."""


class UnknownLabel(GaussCodeError):
    pass


class NotRealizable(GaussCodeError):
    pass


class UnsupportedFormat(GaussCodeError):
    pass


class ProgressStalled(GaussCodeError):
    """Primeification failed to decrease the obstruction count; a defect signal."""


class LogReplayMismatch(GaussCodeError):
    """Replaying a move log did not reproduce a recorded code hash."""
