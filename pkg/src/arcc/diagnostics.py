"""Located diagnostics shared by every pipeline stage."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

ERROR = "error"
WARNING = "warning"

# parse
SYNTAX = "P001"
UNKNOWN_BEHAVIOR_KEYWORD = "P002"
PROFILE_VIOLATION = "P003"
DUPLICATE_TYPE_NAME = "P004"
DUPLICATE_BINDING = "P005"
GENERATOR_FIELD = "P006"
FILE_NAME_MISMATCH = "P007"
BAD_LOCATOR = "P008"

# project loading / resolution
UNKNOWN_TYPE = "L001"
DUPLICATE_COMPONENT_TYPE = "L002"
MISSING_ROOT = "L003"
UNKNOWN_FILE_KIND = "L004"
RECURSIVE_CONTAINMENT = "L005"
IO_ERROR = "L006"

# binding validation
ROOT_MISMATCH = "B001"
UNBOUND_COMPONENTS = "B002"
BAD_BINDING_TARGET = "B003"
OVER_BINDING = "B004"
UNREACHABLE_BINDING = "B005"

# generator registry
DUPLICATE_GENERATOR = "R001"
UNKNOWN_EMITTER = "R002"
UNKNOWN_RULE = "R003"

# generation planning
MISSING_COMPONENT_GENERATOR = "X001"
AMBIGUOUS_COMPONENT_GENERATOR = "X002"
MISSING_BEHAVIOR_GENERATOR = "X003"
AMBIGUOUS_BEHAVIOR_GENERATOR = "X004"
MISSING_TYPE_GENERATOR = "X005"
AMBIGUOUS_TYPE_GENERATOR = "X006"
PLATFORM_MISMATCH = "X007"
UNSUPPORTED_IMPLEMENTATION = "X008"
BAD_OVERRIDE = "X009"

# simulation
MALFORMED_MANIFEST = "S001"
UNKNOWN_RTS = "S002"
MISSING_STUB = "S003"
HEADER_MISMATCH = "S004"
MALFORMED_CELL = "S005"


@dataclass(frozen=True, order=True)
class Location:
    file: str
    line: int = 1
    column: int = 1

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    severity: str
    code: str
    message: str
    location: Location
    # structured payload for programmatic consumers, e.g. ("automaton", "interp-rts-1")
    data: tuple = field(default=(), compare=False)

    @property
    def is_error(self) -> bool:
        return self.severity == ERROR

    def format(self) -> str:
        return f"{self.location}: {self.severity} [{self.code}] {self.message}"

    def __str__(self) -> str:
        return self.format()


def error(code: str, message: str, location: Location, *data) -> Diagnostic:
    return Diagnostic(ERROR, code, message, location, tuple(data))


def warning(code: str, message: str, location: Location, *data) -> Diagnostic:
    return Diagnostic(WARNING, code, message, location, tuple(data))


def sort_key(d: Diagnostic):
    loc = d.location
    return (loc.file, loc.line, loc.column, d.code, d.message)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.is_error for d in diagnostics)


class DiagnosticError(Exception):
    """Raised when a stage produces at least one error diagnostic."""

    def __init__(self, diagnostics: Iterable[Diagnostic]):
        self.diagnostics = tuple(diagnostics)
        super().__init__("\n".join(d.format() for d in self.diagnostics))

    @property
    def codes(self) -> list[str]:
        return [d.code for d in self.diagnostics]
