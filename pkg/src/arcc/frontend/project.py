"""Loading a set of model files into one resolved architecture."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from arcc import diagnostics as dg
from arcc.behaviors.typecheck import ComponentSymbols, ExprChecker
from arcc.binding import BindingModel
from arcc.diagnostics import Diagnostic, DiagnosticError, Location, error
from arcc.frontend.languages import SCHEDULED, BehaviorRegistry, LanguageProfile, default_registry
from arcc.frontend.parser import parse_architecture, parse_binding, parse_data_model, parse_generator_model
from arcc.genfw.model import GeneratorModel
from arcc.model import (PRIMITIVES, Architecture, BehaviorAttachment, ComponentType, DataModel,
                        TypeRef, substitute)

MODEL_SUFFIXES = (".arc", ".types")
SUFFIXES = (".arc", ".types", ".bind", ".gen")


@dataclass(frozen=True)
class Project:
    architecture: Architecture
    bindings: tuple[BindingModel, ...] = ()
    generators: tuple[GeneratorModel, ...] = ()
    warnings: tuple[Diagnostic, ...] = ()

    def binding(self, name: Optional[str] = None) -> BindingModel:
        if name is None:
            return self.bindings[0]
        return next(b for b in self.bindings if b.name == name)


def library_files(lib_dirs: Iterable[Path | str]) -> list[Path]:
    files: list[Path] = []
    for d in lib_dirs:
        files.extend(sorted(p for p in Path(d).iterdir() if p.suffix in MODEL_SUFFIXES))
    return files


def load_project(
    paths: Sequence[Path | str],
    root: str,
    profile: LanguageProfile = SCHEDULED,
    registry: Optional[BehaviorRegistry] = None,
    lib_dirs: Iterable[Path | str] = (),
) -> Project:
    """Parse every file by extension, resolve names across files and assemble the architecture."""
    if not paths:
        raise ValueError("load_project needs at least one file")
    files = [Path(p) for p in paths] + library_files(lib_dirs)
    sources, diags = [], []
    seen = set()
    for path in files:
        key = path.resolve()
        if key in seen:
            continue
        seen.add(key)
        try:
            sources.append((str(path), path.read_text(encoding="utf-8")))
        except OSError as exc:
            diags.append(error(dg.IO_ERROR, f"cannot read file: {exc.strerror}", Location(str(path))))
    if diags:
        raise DiagnosticError(diags)
    return load_sources(sources, root, profile, registry)


def load_sources(
    sources: Sequence[tuple[str, str]],
    root: str,
    profile: LanguageProfile = SCHEDULED,
    registry: Optional[BehaviorRegistry] = None,
) -> Project:
    """Like ``load_project`` for in-memory ``(file name, text)`` pairs."""
    registry = default_registry() if registry is None else registry
    diags: list[Diagnostic] = []
    components: dict[str, ComponentType] = {}
    data_models: list[DataModel] = []
    bindings: list[BindingModel] = []
    generators: list[GeneratorModel] = []

    for file, text in sources:
        suffix = Path(file).suffix
        try:
            if suffix == ".arc":
                comp = parse_architecture(text, profile, registry, file)
                if comp.name in components:
                    diags.append(error(dg.DUPLICATE_COMPONENT_TYPE,
                                       f"duplicate component type '{comp.name}' (first declared at "
                                       f"{components[comp.name].loc})", comp.loc, comp.name))
                else:
                    components[comp.name] = comp
            elif suffix == ".types":
                data_models.append(parse_data_model(text, file))
            elif suffix == ".bind":
                bindings.append(parse_binding(text, file))
            elif suffix == ".gen":
                generators.append(parse_generator_model(text, file))
            else:
                diags.append(error(dg.UNKNOWN_FILE_KIND,
                                   f"unsupported file extension '{suffix}' (expected one of {', '.join(SUFFIXES)})",
                                   Location(file)))
        except DiagnosticError as exc:
            diags.extend(exc.diagnostics)

    type_owner: dict[str, Location] = {}
    for dm in data_models:
        for decl in (*dm.enums, *dm.records):
            if decl.name in type_owner or decl.name in components or decl.name in PRIMITIVES:
                diags.append(error(dg.DUPLICATE_TYPE_NAME, f"duplicate type name '{decl.name}'", decl.loc, decl.name))
            type_owner.setdefault(decl.name, decl.loc)

    if root not in components:
        diags.append(error(dg.MISSING_ROOT, f"root component '{root}' is not declared",
                           Location(sources[0][0] if sources else "<input>"), root))
    if diags:
        raise DiagnosticError(sorted(diags, key=dg.sort_key))

    known = set(PRIMITIVES) | set(type_owner) | set(components)
    for dm in data_models:
        for rec in dm.records:
            for f in rec.fields:
                diags.extend(_unknown_types(f.type, known))
    for comp in components.values():
        scope = known | set(comp.type_params)
        refs = [p.type for p in comp.ports] + [c.type for c in comp.config_params] + \
               [v.type for v in comp.variables] + [s.type for s in comp.subcomponents]
        for ref in refs:
            diags.extend(_unknown_types(ref, scope))
    diags.extend(_containment_cycles(components))
    if diags:
        raise DiagnosticError(sorted(diags, key=dg.sort_key))

    provisional = Architecture(root, components, tuple(data_models), profile.id)
    resolved = {name: _resolve_component(comp, provisional, registry) for name, comp in components.items()}
    arch = Architecture(root, resolved, tuple(data_models), profile.id)
    return Project(arch, tuple(bindings), tuple(generators))


def _unknown_types(ref: TypeRef, scope: set[str]) -> list[Diagnostic]:
    return [error(dg.UNKNOWN_TYPE, f"unknown type '{t.name}'", t.loc, t.name)
            for t in ref.walk() if t.name not in scope]


def _containment_cycles(components: dict[str, ComponentType]) -> list[Diagnostic]:
    graph = {name: sorted({s.type.name for s in c.subcomponents if s.type.name in components})
             for name, c in components.items()}
    diags, state = [], {}

    def visit(name: str, stack: list[str]):
        state[name] = 1
        stack.append(name)
        for nxt in graph[name]:
            if state.get(nxt) == 1:
                cycle = stack[stack.index(nxt):] + [nxt]
                comp = components[name]
                diags.append(error(dg.RECURSIVE_CONTAINMENT,
                                   f"component type contains itself: {' -> '.join(cycle)}", comp.loc, *cycle))
            elif nxt not in state:
                visit(nxt, stack)
        stack.pop()
        state[name] = 2

    for name in sorted(graph):
        if name not in state:
            visit(name, [])
    return diags


def _resolve_component(comp: ComponentType, arch: Architecture, registry: BehaviorRegistry) -> ComponentType:
    """Rewrite bare names in literals and behaviors; failures are left for rule C009 to report."""
    symbols = ComponentSymbols(comp, arch)
    checker = ExprChecker(symbols)
    variables = tuple(
        dataclasses.replace(v, initial=checker.check(v.initial, v.type)[0]) if v.initial is not None else v
        for v in comp.variables)
    subs = []
    for sub in comp.subcomponents:
        child = arch.component(sub.type.name)
        if child is None or not sub.args:
            subs.append(sub)
            continue
        binding = dict(zip(child.type_params, sub.type.args))
        args = []
        for i, arg in enumerate(sub.args):
            expected = substitute(child.config_params[i].type, binding) if i < len(child.config_params) else None
            args.append(checker.check(arg, expected)[0])
        subs.append(dataclasses.replace(sub, args=tuple(args)))
    behaviors = []
    for b in comp.behaviors:
        lang = registry.by_language(b.language)
        model = lang.resolve(b.model, symbols)[0] if lang is not None else b.model
        behaviors.append(BehaviorAttachment(b.language, model, b.loc))
    return dataclasses.replace(comp, variables=variables, subcomponents=tuple(subs), behaviors=tuple(behaviors))
