"""Named well-formedness rules, the rule pool and the deterministic runner."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from arcc.diagnostics import Diagnostic, sort_key
from arcc.model import Architecture

ARCHITECTURE = "architecture"
COMPONENT = "component"


@dataclass(frozen=True)
class CheckRule:
    id: str
    name: str
    description: str
    scope: str  # ARCHITECTURE or COMPONENT
    # architecture scope: procedure(arch); component scope: procedure(arch, component)
    procedure: Callable[..., Iterable[Diagnostic]]

    def run(self, arch: Architecture) -> list[Diagnostic]:
        if self.scope == ARCHITECTURE:
            return list(self.procedure(arch))
        diags: list[Diagnostic] = []
        for comp in arch.component_types.values():
            diags.extend(self.procedure(arch, comp))
        return diags


@dataclass(frozen=True)
class CheckReport:
    rule_results: tuple[tuple[str, tuple[Diagnostic, ...]], ...]

    @property
    def passed(self) -> bool:
        return not any(d.is_error for d in self.diagnostics)

    @property
    def diagnostics(self) -> list[Diagnostic]:
        return sorted((d for _, ds in self.rule_results for d in ds), key=sort_key)

    def errors_for(self, rule_id: str) -> list[Diagnostic]:
        return [d for rid, ds in self.rule_results if rid == rule_id for d in ds if d.is_error]

    def failed_rules(self) -> list[str]:
        return [rid for rid, ds in self.rule_results if any(d.is_error for d in ds)]


class UnknownRule(KeyError):
    def __init__(self, rule_id: str):
        self.rule_id = rule_id
        super().__init__(rule_id)

    def __str__(self) -> str:
        return f"unknown check rule '{self.rule_id}'"


class RulePool:
    """Rules indexed by id; rule names (e.g. ``DeterministicAutomaton``) are aliases."""

    def __init__(self, rules: Iterable[CheckRule] = ()):
        self._rules: dict[str, CheckRule] = {}
        for rule in rules:
            self.add(rule)

    def add(self, rule: CheckRule) -> None:
        existing = self._rules.get(rule.id)
        if existing is not None and existing is not rule:
            raise ValueError(f"duplicate check rule id {rule.id}")
        self._rules[rule.id] = rule

    def canonical(self, rule_id: str) -> str:
        if rule_id in self._rules:
            return rule_id
        for rule in self._rules.values():
            if rule.name == rule_id:
                return rule.id
        raise UnknownRule(rule_id)

    def get(self, rule_id: str) -> CheckRule:
        return self._rules[self.canonical(rule_id)]

    def __contains__(self, rule_id: str) -> bool:
        try:
            self.canonical(rule_id)
        except UnknownRule:
            return False
        return True

    def ids(self) -> list[str]:
        return sorted(self._rules)

    def rules(self) -> list[CheckRule]:
        return [self._rules[i] for i in self.ids()]


def run_checks(arch: Architecture, rule_ids: Iterable[str], pool: RulePool,
               workers: Optional[int] = None) -> CheckReport:
    """Run the selected rules; results are ordered by rule id, diagnostics by location."""
    ids = sorted({pool.canonical(r) for r in rule_ids})
    rules = [pool.get(i) for i in ids]
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as executor:
            outputs = list(executor.map(lambda r: r.run(arch), rules))
    else:
        outputs = [r.run(arch) for r in rules]
    results = tuple((rule.id, tuple(sorted(out, key=sort_key))) for rule, out in zip(rules, outputs))
    return CheckReport(results)

