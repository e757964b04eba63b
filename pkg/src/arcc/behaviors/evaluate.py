"""Expression evaluation with strict absence semantics."""

from __future__ import annotations

from typing import Mapping, Optional

from arcc import expr as ex
from arcc.diagnostics import Location
from arcc.values import EnumValue, MaybeValue


class RuntimeEvalError(Exception):
    def __init__(self, message: str, loc: Optional[Location] = None):
        self.loc = loc
        super().__init__(f"{loc}: {message}" if loc else message)


class DivisionByZero(RuntimeEvalError):
    def __init__(self, loc: Optional[Location] = None):
        super().__init__("division by zero", loc)


ValueEnv = Mapping[str, MaybeValue]


def eval_expr(e: ex.Expr, env: ValueEnv) -> MaybeValue:
    """Evaluate ``e``; ``None`` means absent.

    Any arithmetic or comparison reading an absent operand is absent.
    ``&&``/``||`` follow three-valued logic, so ``false && absent`` is false
    and ``true || absent`` is true.
    """
    if isinstance(e, ex.Lit):
        return e.value
    if isinstance(e, ex.EnumLit):
        if e.enum is None:
            raise RuntimeEvalError(f"unresolved enum literal '{e.literal}'", e.loc)
        return EnumValue(e.enum, e.literal)
    if isinstance(e, ex.READS):
        return env.get(e.name)
    if isinstance(e, ex.Present):
        return env.get(e.name) is not None
    if isinstance(e, ex.Unary):
        v = eval_expr(e.operand, env)
        if v is None:
            return None
        return (not v) if e.op == "!" else -v
    if isinstance(e, ex.Binary):
        if e.op in ex.LOGICAL:
            return _logical(e, env)
        left = eval_expr(e.left, env)
        right = eval_expr(e.right, env)
        if left is None or right is None:
            return None
        return _apply(e, left, right)
    raise RuntimeEvalError(f"cannot evaluate {e!r}")


def _logical(e: ex.Binary, env: ValueEnv) -> MaybeValue:
    decisive = e.op == "||"  # value that decides the result on its own
    left = eval_expr(e.left, env)
    if left is decisive:
        return decisive
    right = eval_expr(e.right, env)
    if right is decisive:
        return decisive
    if left is None or right is None:
        return None
    return not decisive


def _apply(e: ex.Binary, a, b):
    op = e.op
    if op == "==":
        return a == b
    if op == "!=":
        return a != b
    if op == "<":
        return a < b
    if op == "<=":
        return a <= b
    if op == ">":
        return a > b
    if op == ">=":
        return a >= b
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise DivisionByZero(e.loc)
        # truncation toward zero
        q = abs(a) // abs(b)
        return q if (a >= 0) == (b >= 0) else -q
    raise RuntimeEvalError(f"unknown operator {op}", e.loc)


def is_true(e: Optional[ex.Expr], env: ValueEnv) -> bool:
    """Guard truth: a missing guard is always true; absent counts as false."""
    return e is None or eval_expr(e, env) is True
