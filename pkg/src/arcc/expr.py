"""Expression trees for guards, actions and literals.

Parsers produce ``Name`` nodes for bare identifiers; resolution against a
component's symbols turns them into port, variable, parameter or enum
literal nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from arcc.diagnostics import Location
from arcc.values import EnumValue, decode_value, encode_value


def _loc():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Lit:
    value: Union[int, bool, str]
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class EnumLit:
    enum: Optional[str]
    literal: str
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class Name:
    name: str
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class PortRead:
    name: str
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class VarRead:
    name: str
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class ParamRead:
    name: str
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class Present:
    name: str
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    loc: Optional[Location] = _loc()


Expr = Union[Lit, EnumLit, Name, PortRead, VarRead, ParamRead, Present, Unary, Binary]

READS = (Name, PortRead, VarRead, ParamRead)
COMPARISONS = ("==", "!=", "<", "<=", ">", ">=")
ARITHMETIC = ("+", "-", "*", "/")
LOGICAL = ("&&", "||")

# binding strength for printing and parsing, higher binds tighter
PRECEDENCE = {"||": 1, "&&": 2, "==": 3, "!=": 3, "<": 3, "<=": 3, ">": 3, ">=": 3,
              "+": 4, "-": 4, "*": 5, "/": 5}


def walk(e: Expr) -> Iterator[Expr]:
    yield e
    if isinstance(e, Unary):
        yield from walk(e.operand)
    elif isinstance(e, Binary):
        yield from walk(e.left)
        yield from walk(e.right)


def referenced_names(e: Expr) -> set[str]:
    return {n.name for n in walk(e) if isinstance(n, READS + (Present,))}


def is_literal(e: Expr) -> bool:
    if isinstance(e, (Lit, EnumLit)):
        return True
    return isinstance(e, Unary) and e.op == "-" and isinstance(e.operand, Lit) and type(e.operand.value) is int


def literal_value(e: Expr):
    """Value of a literal expression (negated ints folded)."""
    if isinstance(e, Lit):
        return e.value
    if isinstance(e, EnumLit):
        if e.enum is None:
            raise ValueError(f"unresolved enum literal {e.literal}")
        return EnumValue(e.enum, e.literal)
    if isinstance(e, Unary) and e.op == "-" and isinstance(e.operand, Lit):
        return -e.operand.value
    raise ValueError("not a literal")


def render(e: Expr) -> str:
    """Source syntax; subexpressions are parenthesised so re-parsing is exact."""
    if isinstance(e, Lit):
        if isinstance(e.value, bool):
            return "true" if e.value else "false"
        if isinstance(e.value, int):
            return str(e.value)
        return f'"{e.value}"'
    if isinstance(e, EnumLit):
        return f"{e.enum}.{e.literal}" if e.enum else e.literal
    if isinstance(e, Present):
        return f"present({e.name})"
    if isinstance(e, READS):
        return e.name
    if isinstance(e, Unary):
        return f"{e.op}{_render_operand(e.operand)}"
    if isinstance(e, Binary):
        return f"{_render_operand(e.left)} {e.op} {_render_operand(e.right)}"
    raise TypeError(f"not an expression: {e!r}")


def _render_operand(e: Expr) -> str:
    text = render(e)
    if isinstance(e, Binary):
        return f"({text})"
    if isinstance(e, Lit) and type(e.value) is int and e.value < 0:
        return f"({text})"
    return text


def to_json(e: Optional[Expr]):
    """Nested-array encoding: ``[op, arg...]`` with typed leaves."""
    if e is None:
        return None
    if isinstance(e, Lit):
        return ["lit", e.value]
    if isinstance(e, EnumLit):
        return ["lit", encode_value(EnumValue(e.enum, e.literal))]
    if isinstance(e, PortRead):
        return ["port", e.name]
    if isinstance(e, VarRead):
        return ["var", e.name]
    if isinstance(e, ParamRead):
        return ["param", e.name]
    if isinstance(e, Present):
        return ["present", e.name]
    if isinstance(e, Unary):
        return [e.op, to_json(e.operand)]
    if isinstance(e, Binary):
        return [e.op, to_json(e.left), to_json(e.right)]
    raise ValueError(f"cannot serialise unresolved expression {render(e)!r}")


def from_json(obj) -> Optional[Expr]:
    if obj is None:
        return None
    if not isinstance(obj, list) or not obj:
        raise ValueError(f"malformed expression {obj!r}")
    head, *args = obj
    if head == "lit":
        value = decode_value(args[0])
        if isinstance(value, EnumValue):
            return EnumLit(value.enum, value.literal)
        return Lit(value)
    leaf = {"port": PortRead, "var": VarRead, "param": ParamRead, "present": Present}
    if head in leaf:
        return leaf[head](args[0])
    if len(args) == 1 and head in ("!", "-"):
        return Unary(head, from_json(args[0]))
    if len(args) == 2 and head in PRECEDENCE:
        return Binary(head, from_json(args[0]), from_json(args[1]))
    raise ValueError(f"malformed expression {obj!r}")
