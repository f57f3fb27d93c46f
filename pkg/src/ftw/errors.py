from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class FTWError(Exception):
    """Base class for workbench errors."""


class SizeCapError(FTWError):
    """A carrier or frame exceeds the configured enumeration bound."""


class NotACoverError(FTWError):
    pass


class MismatchedSpacesError(FTWError):
    pass


class FrameError(FTWError):
    """Raised when a cover is too broken to carry a frame structure."""


class DocumentError(FTWError):
    """Malformed or semantically invalid input document."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Verdict:
    """Outcome of an exhaustive law check.

    Truthy iff every instance passed. On failure ``law`` names the broken
    law and ``witness`` holds the first offending instance.
    """

    ok: bool
    law: str | None = None
    witness: tuple[Any, ...] | None = None
    message: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, **details) -> "Verdict":
        return cls(True, details=details)

    @classmethod
    def failed(cls, law: str, witness: tuple, message: str = "") -> "Verdict":
        return cls(False, law, witness, message)
