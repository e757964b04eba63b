"""Runtime values, their CSV cell syntax and their JSON encoding.

Absence of a message is represented by ``None`` throughout; no legal value
is ever ``None``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence, Union


@dataclass(frozen=True, order=True)
class EnumValue:
    enum: str
    literal: str

    def __str__(self) -> str:
        return self.literal


@dataclass(frozen=True)
class RecordValue:
    record: str
    fields: tuple  # ((name, value), ...)


Value = Union[int, bool, str, EnumValue, RecordValue]
MaybeValue = Optional[Value]

_INT_RE = re.compile(r"-?[0-9]+\Z")


class CellError(ValueError):
    pass


def format_cell(value: MaybeValue) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return f'"{value}"'
    if isinstance(value, EnumValue):
        return value.literal
    raise CellError(f"record values have no cell syntax ({value.record})")


def parse_cell(text: str, type_name: str, enums: Mapping[str, Sequence[str]]) -> MaybeValue:
    """Parse one CSV cell of the given (primitive or enum) type."""
    if text == "":
        return None
    if type_name == "Int":
        if not _INT_RE.match(text):
            raise CellError(f"malformed Int cell {text!r}")
        return int(text)
    if type_name == "Bool":
        if text == "true":
            return True
        if text == "false":
            return False
        raise CellError(f"malformed Bool cell {text!r} (expected true or false)")
    if type_name == "String":
        if len(text) >= 2 and text[0] == '"' and text[-1] == '"' and '"' not in text[1:-1]:
            return text[1:-1]
        raise CellError(f"malformed String cell {text!r} (expected double quotes)")
    if type_name in enums:
        if text in enums[type_name]:
            return EnumValue(type_name, text)
        raise CellError(f"{text!r} is not a literal of enum {type_name}")
    raise CellError(f"type {type_name} has no cell syntax")


def split_csv_line(line: str) -> list[str]:
    """Split one CSV line; double-quoted cells may contain commas but no quotes."""
    cells: list[str] = []
    current: list[str] = []
    quoted = False
    for ch in line:
        if ch == '"':
            quoted = not quoted
            current.append(ch)
        elif ch == "," and not quoted:
            cells.append("".join(current))
            current = []
        else:
            current.append(ch)
    if quoted:
        raise CellError("unterminated string cell")
    cells.append("".join(current))
    return cells


def encode_value(value: Value):
    """JSON-compatible encoding used by the interp manifest."""
    if isinstance(value, EnumValue):
        return {"enum": value.enum, "literal": value.literal}
    if isinstance(value, RecordValue):
        return {"record": value.record, "fields": {k: encode_value(v) for k, v in value.fields}}
    return value


def decode_value(obj) -> Value:
    if isinstance(obj, dict):
        if "enum" in obj:
            return EnumValue(obj["enum"], obj["literal"])
        if "record" in obj:
            return RecordValue(obj["record"], tuple((k, decode_value(v)) for k, v in obj["fields"].items()))
        raise ValueError(f"cannot decode value {obj!r}")
    if isinstance(obj, (bool, int, str)):
        return obj
    raise ValueError(f"cannot decode value {obj!r}")
