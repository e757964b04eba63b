"""Core context conditions of the component language."""

from __future__ import annotations

from typing import TYPE_CHECKING, Optional

from arcc.behaviors.typecheck import ComponentSymbols, ExprChecker
from arcc.checks.framework import ARCHITECTURE, COMPONENT, CheckRule
from arcc.checks.schedule import check_no_instant_cycles, check_schedule_valid
from arcc.diagnostics import Diagnostic, error
from arcc.expr import is_literal

from arcc.model import (Architecture, ArityMismatch, ComponentType, PortDecl, PortRef, TypeRef,
                        UnknownType, instance_binding, resolve_type_ref, substitute)

if TYPE_CHECKING:
    from arcc.frontend.languages import BehaviorRegistry


def _duplicates(items) -> list:
    seen, dupes = set(), []
    for name, node in items:
        if name in seen:
            dupes.append((name, node))
        seen.add(name)
    return dupes


def c001_unique_names(arch, comp: ComponentType):
    diags = []
    data_names = [(p.name, p) for p in comp.ports] + [(c.name, c) for c in comp.config_params] + \
                 [(v.name, v) for v in comp.variables]
    groups = (("port, parameter or variable", data_names),
              ("subcomponent", [(s.name, s) for s in comp.subcomponents]),
              ("type parameter", [(t, comp) for t in comp.type_params]))
    for what, items in groups:
        for name, node in _duplicates(items):
            diags.append(error("C001", f"duplicate {what} name '{name}' in {comp.name}", node.loc or comp.loc, name))
    return diags


def endpoint(arch: Architecture, comp: ComponentType, ref: PortRef) -> Optional[tuple[PortDecl, TypeRef, bool]]:
    """(declaration, substituted type, is_own_port) or None when dangling."""
    if ref.instance is None:
        decl = comp.port(ref.port)
        return (decl, decl.type, True) if decl else None
    sub = comp.subcomponent(ref.instance)
    if sub is None:
        return None
    child = arch.component(sub.type.name)
    if child is None:
        return None
    decl = child.port(ref.port)
    if decl is None:
        return None
    return decl, substitute(decl.type, instance_binding(arch, sub)), False


def c002_connector_types(arch, comp: ComponentType):
    diags = []
    for con in comp.connectors:
        src = endpoint(arch, comp, con.source)
        for t in con.targets:
            dst = endpoint(arch, comp, t)
            if src and dst and src[1] != dst[1]:
                diags.append(error("C002", f"connector {con.source} -> {t} joins {src[1]} with {dst[1]}",
                                   t.loc or con.loc))
    return diags


def c003_connector_directions(arch, comp: ComponentType):
    diags = []
    for con in comp.connectors:
        src = endpoint(arch, comp, con.source)
        if src:
            decl, _, own = src
            if decl.direction != ("in" if own else "out"):
                diags.append(error("C003", f"illegal connector source {con.source}: must be a subcomponent "
                                           "out-port or an in-port of the enclosing component", con.source.loc))
        for t in con.targets:
            dst = endpoint(arch, comp, t)
            if dst:
                decl, _, own = dst
                if decl.direction != ("out" if own else "in"):
                    diags.append(error("C003", f"illegal connector target {t}: must be a subcomponent "
                                               "in-port or an out-port of the enclosing component", t.loc))
    return diags


def c004_single_writer(arch, comp: ComponentType):
    diags, seen = [], set()
    for con in comp.connectors:
        for t in con.targets:
            key = (t.instance, t.port)
            if key in seen:
                diags.append(error("C004", f"port {t} is targeted by more than one connector", t.loc))
            seen.add(key)
    return diags


def c005_dangling(arch, comp: ComponentType):
    diags = []
    for con in comp.connectors:
        for ref in (con.source, *con.targets):
            if ref.instance is not None and comp.subcomponent(ref.instance) is None:
                diags.append(error("C005", f"unknown subcomponent '{ref.instance}' in {ref}", ref.loc))
            elif endpoint(arch, comp, ref) is None:
                diags.append(error("C005", f"dangling port reference {ref}", ref.loc))
    return diags


def c006_behavior_placement(arch, comp: ComponentType):
    diags = []
    if comp.behaviors and not comp.is_atomic:
        diags.append(error("C006", f"composed component '{comp.name}' cannot carry a behavior",
                           comp.behaviors[0].loc))
    for extra in comp.behaviors[1:]:
        diags.append(error("C006", f"component '{comp.name}' has more than one behavior block", extra.loc))
    return diags


def c008_instant_cycles(arch, comp: ComponentType):
    return check_no_instant_cycles(comp)


def make_c009(registry: BehaviorRegistry) -> CheckRule:
    def c009_behavior_resolved(arch, comp: ComponentType):
        diags = []
        symbols = ComponentSymbols(comp, arch)
        for b in comp.behaviors:
            lang = registry.by_language(b.language)
            if lang is None:
                diags.append(error("C009", f"behavior language '{b.language}' is not registered", b.loc))
                continue
            diags.extend(lang.resolve(b.model, symbols)[1])
        return diags

    return CheckRule("C009", "BehaviorResolved", "embedded behavior language registered and body resolved",
                     COMPONENT, c009_behavior_resolved)


def _literal_type_errors(arch, comp, literal, expected: TypeRef, what: str, rule: str) -> list[Diagnostic]:
    if not is_literal(literal):
        return [error(rule, f"{what} must be a literal", literal.loc or comp.loc)]
    checker = ExprChecker(ComponentSymbols(comp, arch), literal.loc or comp.loc)
    _, got = checker.check(literal, expected)
    diags = [error(rule, d.message, d.location) for d in checker.diagnostics]
    if got is not None and got != expected:
        diags.append(error(rule, f"{what} has type {got}, expected {expected}", literal.loc or comp.loc))
    return diags


def c010_config_arguments(arch, comp: ComponentType):
    diags = []
    if comp.name == arch.root and comp.config_params:
        diags.append(error("C010", f"root component '{comp.name}' cannot declare configuration parameters",
                           comp.loc))
    for sub in comp.subcomponents:
        child = arch.component(sub.type.name)
        if child is None:
            continue
        if len(sub.args) != len(child.config_params):
            diags.append(error("C010", f"instance '{sub.name}' passes {len(sub.args)} argument(s), "
                                       f"{child.name} expects {len(child.config_params)}", sub.loc))
            continue
        binding = instance_binding(arch, sub)
        for param, arg in zip(child.config_params, sub.args):
            expected = substitute(param.type, binding)
            diags.extend(_literal_type_errors(arch, comp, arg, expected,
                                              f"argument '{param.name}' of instance '{sub.name}'", "C010"))
    return diags


def c011_generic_arity(arch: Architecture):
    diags = []

    def use(ref: TypeRef, type_params, data_only: bool, default_loc):
        try:
            resolved = resolve_type_ref(ref, arch, type_params=type_params)
        except ArityMismatch as exc:
            diags.append(error("C011", str(exc), ref.loc or default_loc, exc.name, exc.expected, exc.got))
            return
        except UnknownType as exc:
            diags.append(error("C011", str(exc), ref.loc or default_loc, exc.name))
            return
        if data_only and resolved.kind == "component":
            diags.append(error("C011", f"component type '{ref.name}' cannot be used as a data type",
                               ref.loc or default_loc))
        if not data_only and resolved.kind != "component":
            diags.append(error("C011", f"instance type '{ref.name}' is not a component type",
                               ref.loc or default_loc))
        for arg in ref.args:
            use(arg, type_params, True, default_loc)

    for dm in arch.data_models:
        for rec in dm.records:
            for f in rec.fields:
                use(f.type, (), True, f.loc)
    for comp in arch.component_types.values():
        if comp.name == arch.root and comp.type_params:
            diags.append(error("C011", f"root component '{comp.name}' cannot declare type parameters", comp.loc))
        tp = comp.type_params
        for p in comp.ports:
            use(p.type, tp, True, p.loc)
        for c in comp.config_params:
            use(c.type, tp, True, c.loc)
        for v in comp.variables:
            use(v.type, tp, True, v.loc)
        for s in comp.subcomponents:
            use(s.type, tp, False, s.loc)
    return diags


def c012_atomic_structure(arch, comp: ComponentType):
    diags = []
    if not comp.is_atomic:
        for v in comp.variables:
            diags.append(error("C012", f"variable '{v.name}' declared on composed component '{comp.name}'", v.loc))
    else:
        for con in comp.connectors:
            diags.append(error("C012", f"connector on atomic component '{comp.name}'", con.loc))
    records = arch.records()
    for v in comp.variables:
        if v.type.name in records or v.type.name in comp.type_params:
            diags.append(error("C012", f"variable '{v.name}' of type {v.type} has no literal syntax", v.loc))
        elif v.initial is not None:
            diags.extend(_literal_type_errors(arch, comp, v.initial, v.type, f"initial value of '{v.name}'", "C012"))
    return diags


def c007_schedule(arch, comp: ComponentType):
    return check_schedule_valid(comp)


def _rule(rule_id, name, description, procedure, scope=COMPONENT) -> CheckRule:
    return CheckRule(rule_id, name, description, scope, procedure)


SCHEDULE_VALID = _rule("C007", "ScheduleValid",
                       "a declared schedule lists every subcomponent once in dataflow order", c007_schedule)


def core_rules(registry: BehaviorRegistry) -> list[CheckRule]:
    return [
        _rule("C001", "UniqueNames", "names are unique within a component", c001_unique_names),
        _rule("C002", "ConnectorTypes", "connected ports have equal types", c002_connector_types),
        _rule("C003", "ConnectorDirections", "connectors run from sources to sinks", c003_connector_directions),
        _rule("C004", "SingleWriter", "each port is targeted at most once", c004_single_writer),
        _rule("C005", "NoDanglingReferences", "connectors reference declared instances and ports",
              c005_dangling),
        _rule("C006", "BehaviorPlacement", "behavior only on atomic components, at most one block",
              c006_behavior_placement),
        _rule("C008", "NoInstantCycles", "instant dataflow between subcomponents is acyclic",
              c008_instant_cycles),
        make_c009(registry),
        _rule("C010", "ConfigArguments", "configuration arguments match parameters in arity and type",
              c010_config_arguments),
        _rule("C011", "GenericArity", "generic types are fully instantiated with matching arity",
              c011_generic_arity, ARCHITECTURE),
        _rule("C012", "AtomicStructure", "variables only on atomics, connectors only on composed components",
              c012_atomic_structure),
    ]
