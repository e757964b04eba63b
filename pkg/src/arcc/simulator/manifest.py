"""Reading and validating interp manifests."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping, Optional, Union

from arcc import diagnostics as dg
from arcc import expr as ex
from arcc.behaviors.activity import ActivityGraph, ActivityNode, Edge
from arcc.behaviors.automaton import Action, Automaton, Transition
from arcc.diagnostics import DiagnosticError, Location, error
from arcc.model import join_path
from arcc.simulator.stub import Row, load_stub_trace
from arcc.values import decode_value

INTERP_RTS = "interp-rts-1"
Behavior = Union[Automaton, ActivityGraph]


@dataclass(frozen=True)
class PortSpec:
    name: str
    direction: str
    type: str


@dataclass(frozen=True)
class InstanceSpec:
    path: str
    type: str
    ports: tuple[PortSpec, ...]
    params: Mapping[str, Any] = field(default_factory=dict)
    behavior: Optional[Behavior] = None
    vars: Mapping[str, Any] = field(default_factory=dict)
    stub: Optional[str] = None
    stub_rows: tuple[Row, ...] = ()

    def in_ports(self) -> list[PortSpec]:
        return [p for p in self.ports if p.direction == "in"]

    def out_ports(self) -> list[PortSpec]:
        return [p for p in self.ports if p.direction == "out"]


@dataclass(frozen=True)
class LinkSpec:
    source: tuple[str, str]  # (instance path, port); root boundary ports use path ""
    target: tuple[str, str]
    delayed: bool


@dataclass(frozen=True)
class SimManifest:
    rts: str
    root: str
    boundary_ports: tuple[PortSpec, ...]
    instances: Mapping[str, InstanceSpec]
    links: tuple[LinkSpec, ...]
    schedules: Mapping[str, tuple[str, ...]]
    enums: Mapping[str, tuple[str, ...]]

    def run_order(self) -> list[str]:
        """Atomic instance paths with composed schedules expanded recursively."""
        order: list[str] = []

        def expand(path: str) -> None:
            if path in self.schedules:
                for name in self.schedules[path]:
                    expand(join_path(path, name))
            elif path in self.instances:
                order.append(path)

        expand("")
        return order


class ManifestError(DiagnosticError):
    pass


def split_endpoint(name: str) -> tuple[str, str]:
    path, dot, port = name.rpartition(".")
    return (path, port) if dot else ("", name)


def _require(doc: Mapping, key: str, kind, where: str):
    if key not in doc:
        raise ValueError(f"{where}: missing member '{key}'")
    value = doc[key]
    if not isinstance(value, kind):
        raise ValueError(f"{where}: member '{key}' has the wrong JSON type")
    return value


def _actions(items) -> tuple[Action, ...]:
    return tuple(Action(target, ex.from_json(value)) for target, value in items)


def _behavior(doc: Mapping) -> Behavior:
    language = doc.get("language")
    if language == "automaton":
        transitions = tuple(Transition(t["source"], t["target"], ex.from_json(t["guard"]), _actions(t["actions"]))
                            for t in doc["transitions"])
        return Automaton(tuple(doc["states"]), doc["initial"], transitions)
    if language == "activity":
        nodes = tuple(ActivityNode(n["name"], n["kind"], _actions(n["actions"]),
                                   tuple(Edge(e["target"], ex.from_json(e["guard"]), bool(e["else"]))
                                         for e in n["edges"]))
                      for n in doc["nodes"])
        return ActivityGraph(doc["start"], nodes)
    raise ValueError(f"unknown behavior language {language!r}")


def _ports(items) -> tuple[PortSpec, ...]:
    return tuple(PortSpec(p["name"], p["direction"], p["type"]) for p in items)


def parse_manifest(doc: Any, base_dir: Path, file: str = "<manifest>") -> SimManifest:
    where = Location(file)
    try:
        if not isinstance(doc, dict):
            raise ValueError("manifest must be a JSON object")
        rts = _require(doc, "rts", str, "manifest")
        if rts != INTERP_RTS:
            raise DiagnosticError([error(dg.UNKNOWN_RTS, f"unknown rts '{rts}' (expected '{INTERP_RTS}')",
                                         where, rts)])
        root = _require(doc, "root", str, "manifest")
        boundary = _ports(_require(doc, "boundaryPorts", list, "manifest"))
        data_model = _require(doc, "dataModel", dict, "manifest")
        enums = {k: tuple(v) for k, v in data_model.get("enums", {}).items()}
        raw_instances = _require(doc, "instances", list, "manifest")
        raw_links = _require(doc, "links", list, "manifest")
        schedules = {k: tuple(v) for k, v in _require(doc, "schedules", dict, "manifest").items()}
        instances: dict[str, InstanceSpec] = {}
        pending_stubs = []
        for item in raw_instances:
            path = _require(item, "path", str, "instance")
            spec = InstanceSpec(
                path, _require(item, "type", str, f"instance '{path}'"), _ports(item.get("ports", [])),
                {k: decode_value(v) for k, v in item.get("params", {}).items()},
                _behavior(item["behavior"]) if "behavior" in item else None,
                {k: decode_value(v) for k, v in item.get("vars", {}).items()},
                item.get("stub"))
            if path in instances:
                raise ValueError(f"duplicate instance path '{path}'")
            instances[path] = spec
            if spec.stub is not None:
                pending_stubs.append(spec)
        links = []
        for item in raw_links:
            link = LinkSpec(split_endpoint(_require(item, "from", str, "link")),
                            split_endpoint(_require(item, "to", str, "link")), bool(item.get("delayed", False)))
            for end in (link.source, link.target):
                if not _resolves(end, instances, boundary):
                    raise ValueError(f"link endpoint '{end[0]}.{end[1]}' does not resolve")
            links.append(link)
    except DiagnosticError:
        raise
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise ManifestError([error(dg.MALFORMED_MANIFEST, f"malformed manifest: {exc}", where)]) from None

    composed = _composed_paths(instances)
    missing = sorted(p for p in composed if p not in schedules)
    if missing:
        raise ManifestError([error(dg.MALFORMED_MANIFEST, f"no schedule for composed path(s) {missing}", where)])

    diags = []
    for spec in pending_stubs:
        try:
            rows = load_stub_trace(base_dir / spec.stub, [(p.name, p.type) for p in spec.out_ports()], enums)
            instances[spec.path] = InstanceSpec(spec.path, spec.type, spec.ports, spec.params, None, {},
                                                spec.stub, tuple(rows))
        except DiagnosticError as exc:
            diags.extend(exc.diagnostics)
    if diags:
        raise DiagnosticError(diags)
    return SimManifest(rts, root, boundary, instances, tuple(links), schedules, enums)


def _resolves(end: tuple[str, str], instances: Mapping[str, InstanceSpec], boundary) -> bool:
    path, port = end
    if path == "" and "" not in instances:
        return any(p.name == port for p in boundary)
    inst = instances.get(path)
    return inst is not None and any(p.name == port for p in inst.ports)


def _composed_paths(instances) -> set[str]:
    """Every proper ancestor path of an atomic instance, root included."""
    paths = set()
    for path in instances:
        if path == "":
            continue
        paths.add("")
        parts = path.split("/")
        for i in range(1, len(parts)):
            paths.add("/".join(parts[:i]))
    return paths


def load_manifest(path: Path | str) -> SimManifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ManifestError([error(dg.MALFORMED_MANIFEST, f"cannot read manifest: {exc.strerror}",
                                   Location(str(path)))]) from None
    except json.JSONDecodeError as exc:
        raise ManifestError([error(dg.MALFORMED_MANIFEST, f"invalid JSON: {exc.msg}",
                                   Location(str(path), exc.lineno, exc.colno))]) from None
    return parse_manifest(doc, path.parent, str(path))
