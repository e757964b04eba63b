"""Single-tick activity graphs: model, traversal and guard coverage."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from arcc import expr as ex
from arcc.behaviors.automaton import Action, StepResult, apply_actions
from arcc.behaviors.evaluate import RuntimeEvalError, ValueEnv, is_true
from arcc.diagnostics import Diagnostic, Location, error

END = "end"
TRAVERSAL_LIMIT = 1000
GUARD_COVERAGE = "G002"


def _loc():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Edge:
    target: str
    guard: Optional[ex.Expr] = None
    is_else: bool = False
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class ActivityNode:
    name: str
    kind: str  # action | decision
    actions: tuple[Action, ...] = ()
    edges: tuple[Edge, ...] = ()
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class ActivityGraph:
    start: str
    nodes: tuple[ActivityNode, ...] = ()
    loc: Optional[Location] = _loc()

    def node(self, name: str) -> Optional[ActivityNode]:
        return next((n for n in self.nodes if n.name == name), None)


class TraversalLimitExceeded(RuntimeEvalError):
    def __init__(self, limit: int):
        super().__init__(f"activity traversal exceeded {limit} node visits")


def activity_step(g: ActivityGraph, vars: ValueEnv, inputs: ValueEnv,
                  params: ValueEnv | None = None, limit: int = TRAVERSAL_LIMIT) -> StepResult:
    """Traverse from the start node to ``end``; writes of earlier nodes are visible to later ones."""
    params = params or {}
    current_vars = dict(vars)
    outputs: dict = {}
    current = g.start
    visits = 0
    while current != END:
        visits += 1
        if visits > limit:
            raise TraversalLimitExceeded(limit)
        node = g.node(current)
        if node is None:
            raise RuntimeEvalError(f"unknown activity node '{current}'")
        env = {**params, **current_vars, **inputs}
        if node.kind == "action":
            current_vars = apply_actions(node.actions, env, current_vars, outputs)
            current = node.edges[0].target
            continue
        chosen = next((e for e in node.edges if not e.is_else and is_true(e.guard, env)), None)
        if chosen is None:
            chosen = next((e for e in node.edges if e.is_else), None)
        if chosen is None:
            raise RuntimeEvalError(f"decision node '{node.name}' has no enabled edge", node.loc)
        current = chosen.target
    return StepResult(None, current_vars, outputs)


def check_guard_coverage(g: ActivityGraph) -> list[Diagnostic]:
    diags = []
    names = {n.name for n in g.nodes}
    where = g.loc
    if g.start not in names:
        diags.append(error(GUARD_COVERAGE, f"start node '{g.start}' is not declared", where))
    for node in g.nodes:
        loc = node.loc or where
        for edge in node.edges:
            if edge.target != END and edge.target not in names:
                diags.append(error(GUARD_COVERAGE, f"edge of node '{node.name}' targets unknown node '{edge.target}'",
                                   edge.loc or loc))
        if node.kind == "action":
            if len(node.edges) != 1:
                diags.append(error(GUARD_COVERAGE,
                                   f"action node '{node.name}' requires exactly one outgoing edge, has {len(node.edges)}",
                                   loc))
            elif node.edges[0].guard is not None or node.edges[0].is_else:
                diags.append(error(GUARD_COVERAGE, f"edge of action node '{node.name}' must be unguarded", loc))
        else:
            else_edges = [e for e in node.edges if e.is_else]
            guarded = [e for e in node.edges if e.guard is not None]
            unguarded = [e for e in node.edges if e.guard is None and not e.is_else]
            if not else_edges:
                diags.append(error(GUARD_COVERAGE, f"decision node '{node.name}' requires an else edge", loc))
            elif len(else_edges) > 1:
                diags.append(error(GUARD_COVERAGE, f"decision node '{node.name}' has more than one else edge", loc))
            if not guarded:
                diags.append(error(GUARD_COVERAGE, f"decision node '{node.name}' requires a guarded edge", loc))
            if unguarded:
                diags.append(error(GUARD_COVERAGE, f"decision node '{node.name}' has an unguarded edge", loc))
    return diags
