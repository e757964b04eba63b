"""Selecting component, behavior and type generators for one bound architecture."""

from __future__ import annotations

from typing import Optional

from arcc import diagnostics as dg
from arcc.binding import BoundArchitecture
from arcc.diagnostics import Diagnostic, DiagnosticError, Location, error
from arcc.genfw.artifacts import GenerationPlan
from arcc.genfw.registry import GeneratorRegistry

WHERE = Location("<plan>")


def behavior_languages(bound: BoundArchitecture) -> list[str]:
    """Languages used by reachable atomic components that carry a behavior."""
    arch = bound.architecture
    used = set()
    for name in arch.reachable_types():
        comp = arch.component_types[name]
        if comp.is_atomic and comp.behavior is not None:
            used.add(comp.behavior.language)
    return sorted(used)


def compose_plan(registry: GeneratorRegistry, platform: str, bound: BoundArchitecture,
                 override: Optional[str] = None) -> GenerationPlan:
    """Select generators; every failure names the unmet criterion."""
    arch = bound.architecture
    if bound.platform != platform:
        raise DiagnosticError([error(dg.PLATFORM_MISMATCH, f"architecture is bound for platform "
                                     f"'{bound.platform}', not '{platform}'", WHERE, bound.platform, platform)])
    candidates = [g for g in registry.of_kind("component")
                  if g.platform == platform and g.entrypoint in (arch.root, "*")]
    names = [g.name for g in candidates]
    if override is not None:
        if override not in names:
            raise DiagnosticError([error(dg.BAD_OVERRIDE, f"component generator '{override}' is not a candidate "
                                         f"for platform '{platform}' and root '{arch.root}' (candidates: "
                                         f"{', '.join(names) or 'none'})", WHERE, override)])
        component_gen = candidates[names.index(override)]
    elif not candidates:
        raise DiagnosticError([error(dg.MISSING_COMPONENT_GENERATOR, f"no component generator for platform "
                                     f"'{platform}' with entry point '{arch.root}' or '*'", WHERE, platform)])
    elif len(candidates) > 1:
        raise DiagnosticError([error(dg.AMBIGUOUS_COMPONENT_GENERATOR, f"ambiguous component generators for "
                                     f"platform '{platform}': {', '.join(names)}; choose one with "
                                     "--component-generator", WHERE, *names)])
    else:
        component_gen = candidates[0]
    rts = component_gen.rts
    diags: list[Diagnostic] = []

    emitter = registry.emitter(component_gen)
    for type_name, ref in sorted(bound.resolved_impls.items()):
        if ref.kind not in emitter.impl_kinds:
            diags.append(error(dg.UNSUPPORTED_IMPLEMENTATION, f"component generator '{component_gen.name}' cannot "
                               f"realize {ref.kind} implementation of '{type_name}'", ref.loc or WHERE,
                               type_name, ref.kind))

    behavior_gens = {}
    for lang in behavior_languages(bound):
        found = [g for g in registry.of_kind("behavior") if g.language == lang and g.rts == rts]
        if not found:
            diags.append(error(dg.MISSING_BEHAVIOR_GENERATOR, f"no behavior generator for language '{lang}' "
                               f"and rts '{rts}'", WHERE, lang, rts))
        elif len(found) > 1:
            diags.append(error(dg.AMBIGUOUS_BEHAVIOR_GENERATOR, f"ambiguous behavior generators for language "
                               f"'{lang}' and rts '{rts}': {', '.join(g.name for g in found)}", WHERE, lang, rts))
        else:
            behavior_gens[lang] = found[0]

    types = [g for g in registry.of_kind("type") if g.platform == platform]
    type_gen = types[0] if len(types) == 1 else None
    if not types:
        diags.append(error(dg.MISSING_TYPE_GENERATOR, f"no type generator for platform '{platform}'",
                           WHERE, platform))
    elif len(types) > 1:
        diags.append(error(dg.AMBIGUOUS_TYPE_GENERATOR, f"ambiguous type generators for platform '{platform}': "
                           f"{', '.join(g.name for g in types)}", WHERE, platform))
    if diags:
        raise DiagnosticError(diags)

    checks = sorted({c for g in (component_gen, type_gen, *behavior_gens.values()) for c in g.requires})
    return GenerationPlan(component_gen, behavior_gens, type_gen, tuple(checks), platform, rts)
