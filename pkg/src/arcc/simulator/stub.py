"""Stub trace CSV files: one header of out-port names, then one row per tick."""

from __future__ import annotations

from pathlib import Path
from typing import Mapping, Sequence

from arcc import diagnostics as dg
from arcc.diagnostics import DiagnosticError, Location, error
from arcc.values import CellError, MaybeValue, parse_cell, split_csv_line

Row = dict[str, MaybeValue]


def _lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def parse_stub_trace(text: str, ports: Sequence[tuple[str, str]], enums: Mapping[str, Sequence[str]],
                     file: str = "<trace>") -> list[Row]:
    """``ports`` lists (name, type) of the stub's out-ports in declaration order."""
    lines = _lines(text)
    expected = [name for name, _ in ports]
    try:
        header = split_csv_line(lines[0]) if lines and lines[0] else []
    except CellError:
        header = [lines[0]]
    if header != expected:
        raise DiagnosticError([error(dg.HEADER_MISMATCH, f"trace header [{', '.join(header)}] does not match "
                                     f"out-ports [{', '.join(expected)}]", Location(file, 1, 1))])
    rows: list[Row] = []
    diags = []
    for number, line in enumerate(lines[1:], start=2):
        try:
            cells = split_csv_line(line) if expected else ([] if line == "" else [line])
        except CellError as exc:
            diags.append(error(dg.MALFORMED_CELL, str(exc), Location(file, number, 1)))
            continue
        if len(cells) != len(expected):
            diags.append(error(dg.MALFORMED_CELL, f"expected {len(expected)} cell(s), found {len(cells)}",
                               Location(file, number, 1)))
            continue
        row: Row = {}
        for (name, type_name), cell in zip(ports, cells):
            try:
                row[name] = parse_cell(cell, type_name, enums)
            except CellError as exc:
                diags.append(error(dg.MALFORMED_CELL, f"column '{name}': {exc}", Location(file, number, 1)))
        rows.append(row)
    if diags:
        raise DiagnosticError(diags)
    return rows


def load_stub_trace(path: Path | str, ports: Sequence[tuple[str, str]],
                    enums: Mapping[str, Sequence[str]] = {}) -> list[Row]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DiagnosticError([error(dg.MISSING_STUB, f"cannot read trace file '{path}': {exc.strerror}",
                                     Location(str(path)))]) from None
    return parse_stub_trace(text, ports, enums, str(path))
