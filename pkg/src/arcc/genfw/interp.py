"""Interp target: a JSON manifest executed by the bundled simulator."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Mapping, Optional

from arcc import expr as ex
from arcc.behaviors.activity import ActivityGraph
from arcc.behaviors.automaton import Automaton
from arcc.binding import STUB, BoundArchitecture
from arcc.genfw.artifacts import ArtifactSet, Emitter, GenerationPlan
from arcc.model import ComponentType, DataModel, PortDecl, dataflow_graph, flatten_architecture
from arcc.values import encode_value

INTERP_RTS = "interp-rts-1"
MANIFEST = "manifest.json"


def schedule_of(comp: ComponentType) -> list[str]:
    """Declared schedule, else the least topological order of the dataflow graph."""
    if comp.schedule is not None:
        return list(comp.schedule)
    return dataflow_graph(comp).least_topological_order()


def _port(p: PortDecl) -> dict:
    return {"name": p.name, "direction": p.direction, "type": str(p.type)}


def _actions(actions) -> list:
    return [[a.target, ex.to_json(a.value)] for a in actions]


def emit_data_model(bound: BoundArchitecture, dm: DataModel) -> dict:
    return {
        "enums": {e.name: list(e.literals) for e in dm.enums},
        "records": {r.name: [{"name": f.name, "type": str(f.type)} for f in r.fields] for r in dm.records},
    }


def emit_automaton(bound: BoundArchitecture, comp: ComponentType) -> dict:
    a: Automaton = comp.behavior.model
    return {
        "language": "automaton",
        "states": list(a.states),
        "initial": a.initial,
        "transitions": [{"source": t.source, "target": t.target, "guard": ex.to_json(t.guard),
                         "actions": _actions(t.actions)} for t in a.transitions],
    }


def emit_activity(bound: BoundArchitecture, comp: ComponentType) -> dict:
    g: ActivityGraph = comp.behavior.model
    return {
        "language": "activity",
        "start": g.start,
        "nodes": [{"name": n.name, "kind": n.kind, "actions": _actions(n.actions),
                   "edges": [{"target": e.target, "guard": ex.to_json(e.guard), "else": e.is_else}
                             for e in n.edges]} for n in g.nodes],
    }


def _stub_path(bound: BoundArchitecture, type_name: str, out_dir: Optional[Path]) -> str:
    ref = bound.resolved_impls[type_name]
    path = bound.binding.resolve_locator(ref) if bound.binding is not None else Path(ref.locator)
    if out_dir is None:
        return Path(path).resolve().as_posix()
    return Path(os.path.relpath(Path(path).resolve(), Path(out_dir).resolve())).as_posix()


def emit_interp_manifest(plan: GenerationPlan, bound: BoundArchitecture,
                         type_parts: Optional[Mapping[str, dict]] = None,
                         behavior_parts: Optional[Mapping[str, dict]] = None,
                         out_dir: Optional[Path] = None) -> dict[str, Any]:
    """The manifest document; stub paths are relative to ``out_dir`` when given."""
    arch = bound.architecture
    if type_parts is None:
        type_parts = {dm.name: emit_data_model(bound, dm) for dm in arch.data_models}
    if behavior_parts is None:
        emit = {"automaton": emit_automaton, "activity": emit_activity}
        comps = [arch.component_types[n] for n in arch.reachable_types()]
        behavior_parts = {c.name: emit[c.behavior.language](bound, c)
                          for c in comps if c.is_atomic and c.behavior is not None}
    network = flatten_architecture(arch)
    instances = []
    for inst in network.instances:
        entry: dict[str, Any] = {"path": inst.path, "type": inst.component_type,
                                 "ports": [_port(p) for p in inst.ports]}
        if inst.params:
            entry["params"] = {k: encode_value(v) for k, v in sorted(inst.params.items())}
        if inst.behavior is not None:
            entry["behavior"] = behavior_parts[inst.component_type]
            entry["vars"] = {k: encode_value(v) for k, v in inst.var_init.items()}
        elif inst.component_type in bound.resolved_impls and \
                bound.resolved_impls[inst.component_type].kind == STUB:
            entry["stub"] = _stub_path(bound, inst.component_type, out_dir)
        instances.append(entry)
    enums: dict = {}
    records: dict = {}
    for name in sorted(type_parts):
        enums.update(type_parts[name]["enums"])
        records.update(type_parts[name]["records"])
    return {
        "rts": plan.rts,
        "root": arch.root,
        "boundaryPorts": [_port(p) for p in network.boundary_ports],
        "instances": instances,
        "links": [{"from": l.source_name, "to": l.target_name, "delayed": l.delayed} for l in network.links],
        "schedules": {path: schedule_of(arch.component_types[t]) for path, t in network.composites},
        "composites": [{"path": path, "type": t} for path, t in network.composites],
        "dataModel": {"enums": enums, "records": records},
    }


def dump_manifest(doc: Mapping[str, Any]) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=False) + "\n").encode("utf-8")


def _component_emitter(plan, bound, type_parts, behavior_parts, context) -> ArtifactSet:
    doc = emit_interp_manifest(plan, bound, type_parts, behavior_parts, context.get("out_dir"))
    return ArtifactSet(((MANIFEST, dump_manifest(doc)),), MANIFEST)


EMITTERS = {
    "component:interp": Emitter("component:interp", "component", _component_emitter, frozenset({STUB})),
    "type:interp": Emitter("type:interp", "type", emit_data_model),
    f"behavior:automaton@{INTERP_RTS}": Emitter(f"behavior:automaton@{INTERP_RTS}", "behavior", emit_automaton),
    f"behavior:activity@{INTERP_RTS}": Emitter(f"behavior:activity@{INTERP_RTS}", "behavior", emit_activity),
}
