"""Pretty printers; printing a parsed model and re-parsing it yields an equal model."""

from __future__ import annotations

from typing import Optional

from arcc import expr as ex
from arcc.binding import BindingModel
from arcc.frontend.languages import BehaviorRegistry, default_registry
from arcc.genfw.model import GeneratorModel
from arcc.model import ComponentType, DataModel

INDENT = "  "


def print_component(comp: ComponentType, registry: Optional[BehaviorRegistry] = None) -> str:
    registry = default_registry() if registry is None else registry
    head = f"component {comp.name}"
    if comp.type_params:
        head += f"<{', '.join(comp.type_params)}>"
    if comp.config_params:
        head += "(" + ", ".join(f"{c.type} {c.name}" for c in comp.config_params) + ")"
    lines = [head + " {"]
    for p in comp.ports:
        lines.append(f"{INDENT}port {p.direction} {p.type} {p.name};")
    for v in comp.variables:
        init = f" = {ex.render(v.initial)}" if v.initial is not None else ""
        lines.append(f"{INDENT}var {v.type} {v.name}{init};")
    for s in comp.subcomponents:
        args = f"({', '.join(ex.render(a) for a in s.args)})" if s.args else ""
        lines.append(f"{INDENT}instance {s.type} {s.name}{args};")
    for c in comp.connectors:
        targets = ", ".join(str(t) for t in c.targets)
        lines.append(f"{INDENT}connect {c.source} -> {targets}{' delayed' if c.delayed else ''};")
    if comp.schedule is not None:
        lines.append(f"{INDENT}schedule {', '.join(comp.schedule)};")
    for b in comp.behaviors:
        lang = registry.by_language(b.language)
        if lang is None:
            raise ValueError(f"behavior language '{b.language}' is not registered")
        lines.append(f"{INDENT}{lang.keyword} {{")
        lines.extend(f"{INDENT * 2}{line}" for line in lang.print_body(b.model))
        lines.append(f"{INDENT}}}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_data_model(dm: DataModel) -> str:
    lines = [f"types {dm.name} {{"]
    for e in dm.enums:
        lines.append(f"{INDENT}enum {e.name} {{ {', '.join(e.literals)}; }}")
    for r in dm.records:
        fields = " ".join(f"{f.type} {f.name};" for f in r.fields)
        lines.append(f"{INDENT}record {r.name} {{ {fields} }}" if fields else f"{INDENT}record {r.name} {{ }}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_binding(b: BindingModel) -> str:
    lines = [f"binding {b.name} for {b.root} platform {b.platform} {{"]
    for name, ref in b.entries.items():
        lines.append(f'{INDENT}bind {name} -> {ref.kind} "{ref.locator}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def print_generator_model(g: GeneratorModel) -> str:
    lines = [f"generator {g.name} {{", f"{INDENT}kind {g.kind};"]
    if g.platform is not None:
        lines.append(f"{INDENT}platform {g.platform};")
    if g.language is not None:
        lines.append(f"{INDENT}language {g.language};")
    if g.rts is not None:
        lines.append(f'{INDENT}rts "{g.rts}";')
    if g.entrypoint is not None:
        lines.append(f"{INDENT}entrypoint {g.entrypoint};")
    if g.requires:
        lines.append(f"{INDENT}requires {', '.join(g.requires)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
