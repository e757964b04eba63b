"""Automaton behavior language: model, tick step and determinism analysis."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

from arcc import expr as ex
from arcc.behaviors.evaluate import RuntimeEvalError, ValueEnv, eval_expr, is_true
from arcc.diagnostics import Location

INT64_MIN, INT64_MAX = -(2**63), 2**63 - 1
DEFAULT_DOMAIN_LIMIT = 1_000_000


def _loc():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Action:
    target: str
    value: ex.Expr
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class Transition:
    source: str
    target: str
    guard: Optional[ex.Expr] = None
    actions: tuple[Action, ...] = ()
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class Automaton:
    states: tuple[str, ...]
    initial: str
    transitions: tuple[Transition, ...] = ()
    loc: Optional[Location] = _loc()

    def outgoing(self, state: str) -> list[tuple[int, Transition]]:
        return [(i, t) for i, t in enumerate(self.transitions) if t.source == state]


@dataclass(frozen=True)
class StepResult:
    next_state: Optional[str]
    vars: dict
    outputs: dict


class NondeterministicChoice(RuntimeEvalError):
    def __init__(self, state: str, indices: list[int]):
        self.state = state
        self.indices = tuple(indices)
        super().__init__(f"nondeterministic choice in state '{state}' between transitions {list(indices)}")


def apply_actions(actions, env: ValueEnv, vars: Mapping, outputs: dict) -> dict:
    """Evaluate every action against ``env`` first, then write (later writes win)."""
    values = [(a, eval_expr(a.value, env)) for a in actions]
    new_vars = dict(vars)
    for action, value in values:
        if action.target in new_vars:
            if value is None:
                raise RuntimeEvalError(f"variable '{action.target}' assigned an absent value", action.loc)
            new_vars[action.target] = value
        elif value is None:
            outputs.pop(action.target, None)
        else:
            outputs[action.target] = value
    return new_vars


def automaton_step(
    a: Automaton,
    state: str,
    vars: ValueEnv,
    inputs: ValueEnv,
    params: ValueEnv | None = None,
) -> StepResult:
    env = {**(params or {}), **vars, **inputs}
    enabled = [(i, t) for i, t in a.outgoing(state) if is_true(t.guard, env)]
    if len(enabled) > 1:
        raise NondeterministicChoice(state, [i for i, _ in enabled])
    if not enabled:
        return StepResult(state, dict(vars), {})
    _, fired = enabled[0]
    outputs: dict = {}
    new_vars = apply_actions(fired.actions, env, vars, outputs)
    return StepResult(fired.target, new_vars, outputs)


# ---------------------------------------------------------------- determinism


class DomainTooLarge(Exception):
    def __init__(self, state: str, size: int, limit: int):
        self.state, self.size, self.limit = state, size, limit
        super().__init__(
            f"abstract input domain of state '{state}' has {size} environments (limit {limit}); "
            "simplify the guards of this state")


class RepresentativeOverflow(Exception):
    pass


@dataclass(frozen=True)
class Atom:
    name: str
    type: str  # Int | Bool | String | enum name | other (opaque)
    optional: bool  # in-ports may be absent


@dataclass(frozen=True)
class Witness:
    state: str
    env: dict
    transitions: tuple[int, ...]


@dataclass(frozen=True)
class DeterminismVerdict:
    witness: Optional[Witness] = None
    # guards whose Int comparisons could not be partitioned exactly
    approximate: tuple[ex.Expr, ...] = ()

    @property
    def deterministic(self) -> bool:
        return self.witness is None


def _linear(e: ex.Expr, int_atoms: set[str]):
    """``(coefficients, constant)`` if ``e`` is linear over Int atoms, else None."""
    if isinstance(e, ex.Lit) and type(e.value) is int:
        return {}, e.value
    if isinstance(e, ex.READS) and e.name in int_atoms:
        return {e.name: 1}, 0
    if isinstance(e, ex.Unary) and e.op == "-":
        inner = _linear(e.operand, int_atoms)
        if inner is None:
            return None
        return {k: -v for k, v in inner[0].items()}, -inner[1]
    if isinstance(e, ex.Binary) and e.op in ("+", "-", "*"):
        left, right = _linear(e.left, int_atoms), _linear(e.right, int_atoms)
        if left is None or right is None:
            return None
        if e.op == "*":
            if left[0] and right[0]:
                return None
            (coeffs, k), c = (left, right[1]) if not right[0] else (right, left[1])
            return {n: v * c for n, v in coeffs.items()}, k * c
        sign = 1 if e.op == "+" else -1
        coeffs = dict(left[0])
        for n, v in right[0].items():
            coeffs[n] = coeffs.get(n, 0) + sign * v
        return {n: v for n, v in coeffs.items() if v}, left[1] + sign * right[1]
    return None


def _int_thresholds(guards, int_atoms: set[str]):
    """Per-atom comparison thresholds, and the guards that escaped exact partitioning."""
    thresholds: dict[str, set[int]] = {n: set() for n in int_atoms}
    approximate = []
    for guard in guards:
        inexact = False
        for node in ex.walk(guard):
            if not (isinstance(node, ex.Binary) and node.op in ex.COMPARISONS):
                continue
            left, right = _linear(node.left, int_atoms), _linear(node.right, int_atoms)
            if left is None or right is None:
                touched = ex.referenced_names(node) & int_atoms
                if touched:
                    inexact = True
                continue
            coeffs = dict(left[0])
            for n, v in right[0].items():
                coeffs[n] = coeffs.get(n, 0) - v
            coeffs = {n: v for n, v in coeffs.items() if v}
            const = left[1] - right[1]
            if not coeffs:
                continue
            if len(coeffs) > 1:
                inexact = True
                continue
            (name, c), = coeffs.items()
            # c*x + const op 0  =>  boundary at -const/c
            q = -const / c
            thresholds[name].update({math.floor(q), math.ceil(q)} if -const % c else {-const // c})
        if inexact:
            approximate.append(guard)
    if approximate:
        # atoms compared with each other: share every constant of the state
        shared = set().union(*thresholds.values())
        for names in (ex.referenced_names(g) & int_atoms for g in approximate):
            for n in names:
                thresholds[n] |= shared
    return thresholds, approximate


def int_representatives(thresholds: set[int]) -> list[int]:
    """One value per interval induced by the thresholds: below, at and just above each."""
    if not thresholds:
        return [0]
    ordered = sorted(thresholds)
    reps = {ordered[0] - 1}
    for t in ordered:
        reps.update((t, t + 1))
    if min(reps) < INT64_MIN or max(reps) > INT64_MAX:
        raise RepresentativeOverflow(f"comparison constants exceed the 64-bit signed range: {ordered}")
    return sorted(reps)


def _string_representatives(guards, name: str) -> list[str]:
    literals = set()
    for guard in guards:
        for node in ex.walk(guard):
            if isinstance(node, ex.Binary) and node.op in ("==", "!="):
                sides = (node.left, node.right)
                if any(isinstance(s, ex.READS) and s.name == name for s in sides):
                    literals.update(s.value for s in sides if isinstance(s, ex.Lit) and isinstance(s.value, str))
    fresh = "#"
    while fresh in literals:
        fresh += "#"
    return sorted(literals) + [fresh]


def abstract_domains(guards, atoms: list[Atom], enums: Mapping[str, tuple[str, ...]]):
    from arcc.values import EnumValue

    int_atoms = {a.name for a in atoms if a.type == "Int"}
    thresholds, approximate = _int_thresholds(guards, int_atoms)
    domains = []
    for atom in atoms:
        if atom.type == "Bool":
            values = [True, False]
        elif atom.type == "Int":
            values = int_representatives(thresholds[atom.name])
        elif atom.type == "String":
            values = _string_representatives(guards, atom.name)
        elif atom.type in enums:
            values = [EnumValue(atom.type, lit) for lit in enums[atom.type]]
        else:
            values = [("opaque", 0), ("opaque", 1)]
        if atom.optional:
            values = values + [None]
        domains.append(values)
    return domains, approximate


def check_determinism(
    a: Automaton,
    atoms: Mapping[str, Atom],
    enums: Mapping[str, tuple[str, ...]],
    limit: int = DEFAULT_DOMAIN_LIMIT,
) -> DeterminismVerdict:
    """Search every state's abstract input domain for an env enabling two transitions.

    ``atoms`` describes every readable name of the owning component (in-ports,
    variables, parameters).
    """
    approximate_all: list[ex.Expr] = []
    for state in a.states:
        outgoing = a.outgoing(state)
        if len(outgoing) < 2:
            continue
        if sum(1 for _, t in outgoing if t.guard is None) >= 2:
            first, second = [i for i, t in outgoing if t.guard is None][:2]
            return DeterminismVerdict(Witness(state, {}, (first, second)), tuple(approximate_all))
        guards = [t.guard for _, t in outgoing if t.guard is not None]
        names = sorted(set().union(*(ex.referenced_names(g) for g in guards)) & set(atoms))
        state_atoms = [atoms[n] for n in names]
        domains, approximate = abstract_domains(guards, state_atoms, enums)
        approximate_all.extend(approximate)
        size = math.prod(len(d) for d in domains)
        if size > limit:
            raise DomainTooLarge(state, size, limit)
        for combo in itertools.product(*domains):
            env = dict(zip(names, combo))
            enabled = []
            for i, t in outgoing:
                try:
                    if is_true(t.guard, env):
                        enabled.append(i)
                except RuntimeEvalError:
                    continue
            if len(enabled) >= 2:
                return DeterminismVerdict(Witness(state, env, tuple(enabled)), tuple(approximate_all))
    return DeterminismVerdict(None, tuple(approximate_all))
