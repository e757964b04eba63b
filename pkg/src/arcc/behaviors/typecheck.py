"""Name resolution and typing of embedded expressions against a component."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from arcc import expr as ex
from arcc.behaviors.automaton import Atom
from arcc.diagnostics import Diagnostic, Location, error
from arcc.model import BOOL, INT, STRING, Architecture, ComponentType, TypeRef

RESOLUTION_RULE = "C009"


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str  # in | out | var | param
    type: TypeRef


class ComponentSymbols:
    """Readable and writable names of one component plus the enums in scope."""

    def __init__(self, component: ComponentType, arch: Architecture):
        self.component = component
        self.enums: dict[str, tuple[str, ...]] = {e.name: e.literals for e in arch.enums().values()}
        self.table: dict[str, Symbol] = {}
        for p in component.ports:
            self.table.setdefault(p.name, Symbol(p.name, p.direction, p.type))
        for c in component.config_params:
            self.table.setdefault(c.name, Symbol(c.name, "param", c.type))
        for v in component.variables:
            self.table.setdefault(v.name, Symbol(v.name, "var", v.type))

    def get(self, name: str) -> Optional[Symbol]:
        return self.table.get(name)

    def atoms(self) -> dict[str, Atom]:
        return {s.name: Atom(s.name, s.type.name, s.kind == "in")
                for s in self.table.values() if s.kind != "out"}

    def enums_with(self, literal: str) -> list[str]:
        return sorted(name for name, lits in self.enums.items() if literal in lits)


class ExprChecker:
    def __init__(self, symbols: ComponentSymbols, default_loc: Optional[Location] = None):
        self.symbols = symbols
        self.default_loc = default_loc
        self.diagnostics: list[Diagnostic] = []

    def _error(self, message: str, node) -> None:
        loc = getattr(node, "loc", None) or self.default_loc
        self.diagnostics.append(error(RESOLUTION_RULE, message, loc))

    def check(self, e: ex.Expr, expected: Optional[TypeRef] = None) -> tuple[ex.Expr, Optional[TypeRef]]:
        if isinstance(e, ex.Lit):
            if isinstance(e.value, bool):
                return e, BOOL
            return e, INT if isinstance(e.value, int) else STRING
        if isinstance(e, ex.EnumLit):
            return self._enum_literal(e, expected)
        if isinstance(e, (ex.Name, ex.PortRead, ex.VarRead, ex.ParamRead)):
            sym = self.symbols.get(e.name)
            if sym is None:
                return self._enum_literal(ex.EnumLit(None, e.name, e.loc), expected)
            if sym.kind == "out":
                self._error(f"out-port '{e.name}' cannot be read", e)
                return e, None
            node = {"in": ex.PortRead, "var": ex.VarRead, "param": ex.ParamRead}[sym.kind](e.name, e.loc)
            return node, sym.type
        if isinstance(e, ex.Present):
            sym = self.symbols.get(e.name)
            if sym is None or sym.kind != "in":
                self._error(f"present() requires an in-port, '{e.name}' is not one", e)
            return e, BOOL
        if isinstance(e, ex.Unary):
            want = BOOL if e.op == "!" else INT
            operand, t = self.check(e.operand, want)
            self._require(t, want, e.operand, f"operand of '{e.op}'")
            return ex.Unary(e.op, operand, e.loc), want
        if isinstance(e, ex.Binary):
            return self._binary(e)
        self._error(f"unsupported expression {e!r}", e)
        return e, None

    def _enum_literal(self, e: ex.EnumLit, expected: Optional[TypeRef]):
        enums = self.symbols.enums
        if e.enum is not None:
            if e.enum not in enums:
                self._error(f"unknown enum '{e.enum}'", e)
                return e, None
            if e.literal not in enums[e.enum]:
                self._error(f"'{e.literal}' is not a literal of enum {e.enum}", e)
                return e, None
            return e, TypeRef(e.enum)
        if expected is not None and expected.name in enums and e.literal in enums[expected.name]:
            return ex.EnumLit(expected.name, e.literal, e.loc), TypeRef(expected.name)
        candidates = self.symbols.enums_with(e.literal)
        if len(candidates) == 1:
            return ex.EnumLit(candidates[0], e.literal, e.loc), TypeRef(candidates[0])
        if candidates:
            self._error(f"enum literal '{e.literal}' is ambiguous between {', '.join(candidates)}", e)
        else:
            self._error(f"unknown name '{e.literal}'", e)
        return e, None

    def _binary(self, e: ex.Binary):
        if e.op in ex.LOGICAL:
            left, lt = self.check(e.left, BOOL)
            right, rt = self.check(e.right, BOOL)
            self._require(lt, BOOL, e.left, f"left operand of '{e.op}'")
            self._require(rt, BOOL, e.right, f"right operand of '{e.op}'")
            return ex.Binary(e.op, left, right, e.loc), BOOL
        if e.op in ex.ARITHMETIC or e.op in ("<", "<=", ">", ">="):
            left, lt = self.check(e.left, INT)
            right, rt = self.check(e.right, INT)
            self._require(lt, INT, e.left, f"left operand of '{e.op}'")
            self._require(rt, INT, e.right, f"right operand of '{e.op}'")
            return ex.Binary(e.op, left, right, e.loc), (INT if e.op in ex.ARITHMETIC else BOOL)
        # equality: a bare enum literal takes its type from the other side
        if self._bare_literal(e.left) and not self._bare_literal(e.right):
            right, rt = self.check(e.right)
            left, lt = self.check(e.left, rt)
        else:
            left, lt = self.check(e.left)
            right, rt = self.check(e.right, lt)
        if lt is not None and rt is not None and lt != rt:
            self._error(f"cannot compare {lt} with {rt}", e)
        return ex.Binary(e.op, left, right, e.loc), BOOL

    def _bare_literal(self, e: ex.Expr) -> bool:
        if isinstance(e, ex.EnumLit):
            return e.enum is None
        return isinstance(e, ex.Name) and self.symbols.get(e.name) is None

    def _require(self, got: Optional[TypeRef], want: TypeRef, node, what: str) -> None:
        if got is not None and got != want:
            self._error(f"{what} must be {want}, found {got}", node)

    # ------------------------------------------------------------ statements

    def guard(self, e: Optional[ex.Expr]) -> Optional[ex.Expr]:
        if e is None:
            return None
        resolved, t = self.check(e, BOOL)
        self._require(t, BOOL, e, "guard")
        return resolved

    def action(self, target: str, value: ex.Expr, node) -> ex.Expr:
        sym = self.symbols.get(target)
        if sym is None or sym.kind not in ("out", "var"):
            self._error(f"action target '{target}' is not an out-port or variable", node)
            resolved, _ = self.check(value)
            return resolved
        resolved, t = self.check(value, sym.type)
        if t is not None and t != sym.type:
            self._error(f"cannot assign {t} to '{target}' of type {sym.type}", node)
        return resolved
