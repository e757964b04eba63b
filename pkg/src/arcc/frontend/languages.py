"""Language profiles and the behavior-language embedding registry."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional

from arcc import expr as ex
from arcc.behaviors.activity import END, ActivityGraph, ActivityNode, Edge, check_guard_coverage
from arcc.behaviors.automaton import (Action, Automaton, DomainTooLarge, RepresentativeOverflow,
                                      Transition, check_determinism)
from arcc.behaviors.typecheck import RESOLUTION_RULE, ComponentSymbols, ExprChecker
from arcc.checks.framework import COMPONENT, CheckRule
from arcc.diagnostics import Diagnostic, error, warning
from arcc.frontend.stream import TokenStream

# element keywords of the host language; never usable as behavior keywords
RESERVED = frozenset({"component", "port", "var", "instance", "connect", "schedule", "in", "out", "delayed"})


@dataclass(frozen=True)
class LanguageProfile:
    id: str
    extra_elements: frozenset = frozenset()
    extra_checks: frozenset = frozenset()

    def accepts(self, element: str) -> bool:
        return element in self.extra_elements


BASE = LanguageProfile("base")
SCHEDULED = LanguageProfile("scheduled", frozenset({"schedule"}), frozenset({"C007"}))
PROFILES = {"base": BASE, "scheduled": SCHEDULED}


@dataclass(frozen=True)
class BehaviorLanguage:
    language_id: str
    keyword: str
    parse_body: Callable[[TokenStream], Any]
    print_body: Callable[[Any], list[str]]
    # resolve(model, symbols) -> (resolved model, diagnostics)
    resolve: Callable[[Any, ComponentSymbols], tuple[Any, list[Diagnostic]]]
    rules: tuple[CheckRule, ...] = field(default=(), compare=False)

    @property
    def checks(self) -> frozenset[str]:
        return frozenset(r.id for r in self.rules)


class DuplicateKeyword(ValueError):
    def __init__(self, keyword: str):
        self.keyword = keyword
        super().__init__(f"behavior keyword '{keyword}' is already registered")


class BehaviorRegistry:
    """Immutable keyword -> language map; ``register`` returns an extended copy."""

    def __init__(self, languages: Iterable[BehaviorLanguage] = ()):
        self._by_keyword: dict[str, BehaviorLanguage] = {}
        for lang in languages:
            if lang.keyword in self._by_keyword or lang.keyword in RESERVED:
                raise DuplicateKeyword(lang.keyword)
            self._by_keyword[lang.keyword] = lang

    def register(self, lang: BehaviorLanguage) -> "BehaviorRegistry":
        return BehaviorRegistry([*self._by_keyword.values(), lang])

    def by_keyword(self, keyword: str) -> Optional[BehaviorLanguage]:
        return self._by_keyword.get(keyword)

    def by_language(self, language_id: str) -> Optional[BehaviorLanguage]:
        return next((l for l in self._by_keyword.values() if l.language_id == language_id), None)

    @property
    def languages(self) -> list[BehaviorLanguage]:
        return list(self._by_keyword.values())

    def rules(self) -> list[CheckRule]:
        return [r for lang in self.languages for r in lang.rules]


def register_behavior_language(reg: BehaviorLanguage, registry: BehaviorRegistry) -> BehaviorRegistry:
    return registry.register(reg)


# ---------------------------------------------------------------- shared pieces


def _parse_action(ts: TokenStream) -> Action:
    target = ts.expect_id("action target")
    ts.expect("=")
    return Action(target.value, ts.parse_expr(), target.loc)


def _render_action(a: Action) -> str:
    return f"{a.target} = {ex.render(a.value)}"


# ---------------------------------------------------------------- automaton


def parse_automaton(ts: TokenStream) -> Automaton:
    start = ts.expect("states")
    states = [ts.expect_id("state name").value]
    while not ts.at(";"):
        states.append(ts.expect_id("state name").value)
    ts.expect(";")
    ts.expect("initial")
    initial = ts.expect_id("state name").value
    ts.expect(";")
    transitions = []
    while not ts.at("}"):
        src = ts.expect_id("state name")
        ts.expect("->")
        dst = ts.expect_id("state name").value
        guard = None
        if ts.accept("["):
            guard = ts.parse_expr()
            ts.expect("]")
        actions = []
        if ts.accept("/"):
            actions.append(_parse_action(ts))
            while ts.accept(","):
                actions.append(_parse_action(ts))
        ts.expect(";")
        transitions.append(Transition(src.value, dst, guard, tuple(actions), src.loc))
    return Automaton(tuple(states), initial, tuple(transitions), start.loc)


def print_automaton(a: Automaton) -> list[str]:
    lines = [f"states {' '.join(a.states)};", f"initial {a.initial};"]
    for t in a.transitions:
        text = f"{t.source} -> {t.target}"
        if t.guard is not None:
            text += f" [{ex.render(t.guard)}]"
        if t.actions:
            text += " / " + ", ".join(_render_action(x) for x in t.actions)
        lines.append(text + ";")
    return lines


def resolve_automaton(a: Automaton, symbols: ComponentSymbols):
    checker = ExprChecker(symbols, a.loc)
    diags: list[Diagnostic] = []
    seen = set()
    for s in a.states:
        if s in seen:
            diags.append(error(RESOLUTION_RULE, f"duplicate state '{s}'", a.loc))
        seen.add(s)
    if a.initial not in seen:
        diags.append(error(RESOLUTION_RULE, f"initial state '{a.initial}' is not declared", a.loc))
    transitions = []
    for t in a.transitions:
        for end in (t.source, t.target):
            if end not in seen:
                diags.append(error(RESOLUTION_RULE, f"transition references undeclared state '{end}'", t.loc))
        guard = checker.guard(t.guard)
        actions = tuple(Action(x.target, checker.action(x.target, x.value, x), x.loc) for x in t.actions)
        transitions.append(Transition(t.source, t.target, guard, actions, t.loc))
    resolved = Automaton(a.states, a.initial, tuple(transitions), a.loc)
    return resolved, diags + checker.diagnostics


def _g001(arch, comp) -> list[Diagnostic]:
    attachment = comp.behavior
    if attachment is None or attachment.language != "automaton" or not comp.is_atomic:
        return []
    symbols = ComponentSymbols(comp, arch)
    where = attachment.loc or comp.loc
    try:
        verdict = check_determinism(attachment.model, symbols.atoms(), symbols.enums)
    except DomainTooLarge as exc:
        return [error("G001", f"{comp.name}: {exc}", where)]
    except RepresentativeOverflow as exc:
        return [error("G001", f"{comp.name}: {exc}", where)]
    diags = [warning("G001", f"{comp.name}: determinism analysis is approximate for guard "
                             f"[{ex.render(g)}] (compares several Int values)", g.loc or where)
             for g in verdict.approximate]
    w = verdict.witness
    if w is not None:
        env = ", ".join(f"{k}={'absent' if v is None else v}" for k, v in sorted(w.env.items()))
        diags.append(error(
            "G001",
            f"{comp.name}: nondeterministic automaton: in state '{w.state}' with {{{env}}} "
            f"transitions {list(w.transitions)} are all enabled",
            where, w))
    return diags


DETERMINISTIC_AUTOMATON = CheckRule(
    "G001", "DeterministicAutomaton",
    "every automaton state enables at most one transition for every input",
    COMPONENT, _g001)

AUTOMATON = BehaviorLanguage("automaton", "automaton", parse_automaton, print_automaton,
                             resolve_automaton, (DETERMINISTIC_AUTOMATON,))


# ---------------------------------------------------------------- activity


def parse_activity(ts: TokenStream) -> ActivityGraph:
    start_tok = ts.expect("start")
    ts.expect("->")
    start = ts.expect_id("node name").value
    ts.expect(";")
    nodes = []
    while ts.at("node"):
        head = ts.next()
        name = ts.expect_id("node name").value
        ts.expect(":")
        actions = []
        if ts.accept("action"):
            kind = "action"
            ts.expect("{")
            while not ts.at("}"):
                actions.append(_parse_action(ts))
                ts.accept(";")
            ts.expect("}")
        elif ts.accept("decision"):
            kind = "decision"
        else:
            ts.fail(f"expected 'action' or 'decision' but found {ts.peek()}")
        edges = []
        while ts.at("->"):
            arrow = ts.next()
            target = ts.expect_id("node name").value
            guard, is_else = None, False
            if ts.accept("["):
                if ts.accept("else"):
                    is_else = True
                else:
                    guard = ts.parse_expr()
                ts.expect("]")
            ts.expect(";")
            edges.append(Edge(target, guard, is_else, arrow.loc))
        if not edges:
            ts.fail(f"node '{name}' requires at least one edge")
        nodes.append(ActivityNode(name, kind, tuple(actions), tuple(edges), head.loc))
    return ActivityGraph(start, tuple(nodes), start_tok.loc)


def print_activity(g: ActivityGraph) -> list[str]:
    lines = [f"start -> {g.start};"]
    for node in g.nodes:
        if node.kind == "action":
            body = " ".join(f"{_render_action(a)};" for a in node.actions)
            lines.append(f"node {node.name} : action {{ {body} }}" if body else f"node {node.name} : action {{ }}")
        else:
            lines.append(f"node {node.name} : decision")
        for e in node.edges:
            suffix = " [else]" if e.is_else else (f" [{ex.render(e.guard)}]" if e.guard is not None else "")
            lines.append(f"  -> {e.target}{suffix};")
    return lines


def resolve_activity(g: ActivityGraph, symbols: ComponentSymbols):
    checker = ExprChecker(symbols, g.loc)
    diags: list[Diagnostic] = []
    seen = set()
    for node in g.nodes:
        if node.name in seen or node.name == END:
            diags.append(error(RESOLUTION_RULE, f"invalid or duplicate node name '{node.name}'", node.loc))
        seen.add(node.name)
    nodes = []
    for node in g.nodes:
        actions = tuple(Action(a.target, checker.action(a.target, a.value, a), a.loc) for a in node.actions)
        edges = tuple(Edge(e.target, checker.guard(e.guard), e.is_else, e.loc) for e in node.edges)
        nodes.append(ActivityNode(node.name, node.kind, actions, edges, node.loc))
    return ActivityGraph(g.start, tuple(nodes), g.loc), diags + checker.diagnostics


def _g002(arch, comp) -> list[Diagnostic]:
    attachment = comp.behavior
    if attachment is None or attachment.language != "activity":
        return []
    return check_guard_coverage(attachment.model)


GUARD_COVERAGE = CheckRule(
    "G002", "GuardCoverage",
    "decision nodes carry an else edge and action nodes exactly one edge",
    COMPONENT, _g002)

ACTIVITY = BehaviorLanguage("activity", "activity", parse_activity, print_activity,
                            resolve_activity, (GUARD_COVERAGE,))


def default_registry() -> BehaviorRegistry:
    return BehaviorRegistry([AUTOMATON, ACTIVITY])
