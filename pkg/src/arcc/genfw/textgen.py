"""Textgen target: deterministic source text per component type, data model and behavior."""

from __future__ import annotations

from typing import Mapping, Optional

from arcc import expr as ex
from arcc.binding import EXTERN, STUB, BoundArchitecture
from arcc.genfw.artifacts import ArtifactSet, Emitter, GenerationPlan
from arcc.genfw.interp import schedule_of
from arcc.model import ComponentType, DataModel, PortRef, flatten_architecture

TEXTGEN_RTS = "textgen-rts-1"
SUFFIX = ".gen.txt"


def _text(lines: list[str]) -> bytes:
    return ("\n".join(lines) + "\n").encode("utf-8")


def _ref(r: PortRef) -> str:
    return f"{r.instance}.{r.port}" if r.instance else r.port


def _action_list(actions) -> str:
    return ", ".join(f"{a.target} = {ex.render(a.value)}" for a in actions) or "-"


def emit_data_model(bound: BoundArchitecture, dm: DataModel) -> list[str]:
    lines = [f"// data model {dm.name} for platform {bound.platform}"]
    lines += [f"enum {e.name}: {', '.join(e.literals)}" for e in dm.enums]
    lines += [f"record {r.name}: {', '.join(f'{f.type} {f.name}' for f in r.fields)}" for r in dm.records]
    return lines


def emit_automaton(bound: BoundArchitecture, comp: ComponentType) -> list[str]:
    a = comp.behavior.model
    lines = ["behavior automaton", f"  states {', '.join(a.states)}", f"  initial {a.initial}",
             "  transitions"]
    for i, t in enumerate(a.transitions):
        guard = ex.render(t.guard) if t.guard is not None else "true"
        lines.append(f"    {i}: {t.source} -> {t.target} when {guard} do {_action_list(t.actions)}")
    return lines


def emit_activity(bound: BoundArchitecture, comp: ComponentType) -> list[str]:
    g = comp.behavior.model
    lines = ["behavior activity", f"  start {g.start}", "  nodes"]
    for n in g.nodes:
        lines.append(f"    {n.name} ({n.kind}) do {_action_list(n.actions)}")
        for e in n.edges:
            cond = "else" if e.is_else else (ex.render(e.guard) if e.guard is not None else "always")
            lines.append(f"      -> {e.target} when {cond}")
    return lines


def emit_component_hull(bound: BoundArchitecture, comp: ComponentType,
                        behavior: Optional[list[str]]) -> list[str]:
    params = f"<{', '.join(comp.type_params)}>" if comp.type_params else ""
    lines = [f"// component {comp.name}{params} for platform {bound.platform}", f"component {comp.name}{params}"]
    lines += [f"port {p.direction} {p.type} {p.name}" for p in comp.ports]
    lines += [f"var {v.type} {v.name}" + (f" = {ex.render(v.initial)}" if v.initial is not None else "")
              for v in comp.variables]
    lines += [f"param {c.type} {c.name}" for c in comp.config_params]
    for s in comp.subcomponents:
        args = f"({', '.join(ex.render(a) for a in s.args)})" if s.args else ""
        lines.append(f"instance {s.name} : {s.type}{args}")
    for c in comp.connectors:
        delayed = " delayed" if c.delayed else ""
        lines.append(f"connect {_ref(c.source)} -> {', '.join(_ref(t) for t in c.targets)}{delayed}")
    if not comp.is_atomic:
        lines.append(f"schedule {', '.join(schedule_of(comp))}")
    if behavior is not None:
        lines += behavior
    ref = bound.resolved_impls.get(comp.name)
    if ref is not None and ref.kind == EXTERN:
        lines.append(f'extern impl "{ref.locator}"')
    elif ref is not None and ref.kind == STUB:
        lines.append(f'stub trace "{ref.locator}"')
    lines.append("end")
    return lines


def emit_main(plan: GenerationPlan, bound: BoundArchitecture) -> list[str]:
    arch = bound.architecture
    network = flatten_architecture(arch)
    lines = [f"// bootstrap for {arch.root} on platform {plan.platform} (rts {plan.rts})", f"main {arch.root}"]
    lines += [f"instance {i.path} : {i.component_type}" for i in network.instances]
    lines += [f"link {l.source_name} -> {l.target_name}" + (" delayed" if l.delayed else "")
              for l in network.links]
    lines.append("end")
    return lines


def emit_text_sources(plan: GenerationPlan, bound: BoundArchitecture,
                      type_parts: Optional[Mapping[str, list[str]]] = None,
                      behavior_parts: Optional[Mapping[str, list[str]]] = None) -> ArtifactSet:
    arch = bound.architecture
    if type_parts is None:
        type_parts = {dm.name: emit_data_model(bound, dm) for dm in arch.data_models}
    if behavior_parts is None:
        emit = {"automaton": emit_automaton, "activity": emit_activity}
        comps = [arch.component_types[n] for n in arch.reachable_types()]
        behavior_parts = {c.name: emit[c.behavior.language](bound, c)
                          for c in comps if c.is_atomic and c.behavior is not None}
    files = []
    for name in sorted(type_parts):
        files.append((f"types/{name}{SUFFIX}", _text(type_parts[name])))
    for name in sorted(behavior_parts):
        files.append((f"behaviors/{name}{SUFFIX}", _text(behavior_parts[name])))
    for name in sorted(arch.reachable_types()):
        comp = arch.component_types[name]
        files.append((f"components/{name}{SUFFIX}", _text(emit_component_hull(bound, comp, behavior_parts.get(name)))))
    files.append((f"main{SUFFIX}", _text(emit_main(plan, bound))))
    return ArtifactSet(tuple(files))


def _component_emitter(plan, bound, type_parts, behavior_parts, context) -> ArtifactSet:
    return emit_text_sources(plan, bound, type_parts, behavior_parts)


EMITTERS = {
    "component:textgen": Emitter("component:textgen", "component", _component_emitter,
                                 frozenset({STUB, EXTERN})),
    "type:textgen": Emitter("type:textgen", "type", emit_data_model),
    f"behavior:automaton@{TEXTGEN_RTS}": Emitter(f"behavior:automaton@{TEXTGEN_RTS}", "behavior", emit_automaton),
    f"behavior:activity@{TEXTGEN_RTS}": Emitter(f"behavior:activity@{TEXTGEN_RTS}", "behavior", emit_activity),
}
