"""Resolved, immutable model of architectures and their structural derivations."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Any, Iterator, Mapping, Optional, Sequence

from arcc.diagnostics import Location
from arcc.expr import Expr, is_literal, literal_value

PRIMITIVES = ("Int", "Bool", "String")


def _loc():
    return field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class TypeRef:
    name: str
    args: tuple["TypeRef", ...] = ()
    loc: Optional[Location] = _loc()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}<{', '.join(str(a) for a in self.args)}>"

    def walk(self) -> Iterator["TypeRef"]:
        yield self
        for a in self.args:
            yield from a.walk()


def substitute(ref: TypeRef, binding: Mapping[str, TypeRef]) -> TypeRef:
    if not ref.args and ref.name in binding:
        return binding[ref.name]
    if not ref.args:
        return ref
    return TypeRef(ref.name, tuple(substitute(a, binding) for a in ref.args), ref.loc)


INT = TypeRef("Int")
BOOL = TypeRef("Bool")
STRING = TypeRef("String")


@dataclass(frozen=True)
class EnumDecl:
    name: str
    literals: tuple[str, ...]
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class RecordField:
    name: str
    type: TypeRef
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class RecordDecl:
    name: str
    fields: tuple[RecordField, ...]
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class DataModel:
    name: str
    enums: tuple[EnumDecl, ...] = ()
    records: tuple[RecordDecl, ...] = ()
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class PortDecl:
    name: str
    direction: str  # "in" | "out"
    type: TypeRef
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class ConfigParam:
    type: TypeRef
    name: str
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class Variable:
    name: str
    type: TypeRef
    initial: Optional[Expr] = None
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class SubcomponentInstance:
    name: str
    type: TypeRef
    args: tuple[Expr, ...] = ()
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class PortRef:
    instance: Optional[str]
    port: str
    loc: Optional[Location] = _loc()

    def __str__(self) -> str:
        return f"{self.instance}.{self.port}" if self.instance else self.port


@dataclass(frozen=True)
class Connector:
    source: PortRef
    targets: tuple[PortRef, ...]
    delayed: bool = False
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class BehaviorAttachment:
    language: str
    model: Any
    loc: Optional[Location] = _loc()


@dataclass(frozen=True)
class ComponentType:
    name: str
    type_params: tuple[str, ...] = ()
    config_params: tuple[ConfigParam, ...] = ()
    ports: tuple[PortDecl, ...] = ()
    variables: tuple[Variable, ...] = ()
    subcomponents: tuple[SubcomponentInstance, ...] = ()
    connectors: tuple[Connector, ...] = ()
    # every parsed behavior block; well-formed components carry at most one
    behaviors: tuple[BehaviorAttachment, ...] = ()
    schedule: Optional[tuple[str, ...]] = None
    loc: Optional[Location] = _loc()
    schedule_loc: Optional[Location] = _loc()

    @property
    def is_atomic(self) -> bool:
        return not self.subcomponents

    @property
    def behavior(self) -> Optional[BehaviorAttachment]:
        return self.behaviors[0] if self.behaviors else None

    def port(self, name: str) -> Optional[PortDecl]:
        return next((p for p in self.ports if p.name == name), None)

    def subcomponent(self, name: str) -> Optional[SubcomponentInstance]:
        return next((s for s in self.subcomponents if s.name == name), None)

    def in_ports(self) -> list[PortDecl]:
        return [p for p in self.ports if p.direction == "in"]

    def out_ports(self) -> list[PortDecl]:
        return [p for p in self.ports if p.direction == "out"]


@dataclass(frozen=True)
class Architecture:
    root: str
    component_types: Mapping[str, ComponentType]
    data_models: tuple[DataModel, ...] = ()
    profile: str = "base"

    def component(self, name: str) -> Optional[ComponentType]:
        return self.component_types.get(name)

    @property
    def root_component(self) -> ComponentType:
        return self.component_types[self.root]

    def enums(self) -> dict[str, EnumDecl]:
        return {e.name: e for dm in self.data_models for e in dm.enums}

    def records(self) -> dict[str, RecordDecl]:
        return {r.name: r for dm in self.data_models for r in dm.records}

    def reachable_types(self) -> list[str]:
        """Component type names reachable from the root, root first, BFS order."""
        seen: list[str] = []
        queue = [self.root]
        while queue:
            name = queue.pop(0)
            if name in seen or name not in self.component_types:
                continue
            seen.append(name)
            queue.extend(s.type.name for s in self.component_types[name].subcomponents)
        return seen


# ---------------------------------------------------------------- resolution


class ResolutionError(Exception):
    pass


class UnknownType(ResolutionError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown type '{name}'")


class ArityMismatch(ResolutionError):
    def __init__(self, name: str, expected: int, got: int):
        self.name, self.expected, self.got = name, expected, got
        super().__init__(f"type '{name}' expects {expected} type argument(s), got {got}")


@dataclass(frozen=True)
class ResolvedType:
    kind: str  # primitive | enum | record | component | param
    name: str
    args: tuple["ResolvedType", ...] = ()
    decl: Any = field(default=None, compare=False, repr=False)


def resolve_type_ref(
    ref: TypeRef,
    arch: Architecture,
    bindings: Mapping[str, TypeRef] | None = None,
    type_params: Sequence[str] = (),
) -> ResolvedType:
    """Resolve ``ref`` to its referent, substituting bound generic parameters."""
    bindings = bindings or {}
    if ref.name in bindings and not ref.args:
        return resolve_type_ref(bindings[ref.name], arch)
    if ref.name in type_params:
        _arity(ref, 0)
        return ResolvedType("param", ref.name)
    if ref.name in PRIMITIVES:
        _arity(ref, 0)
        return ResolvedType("primitive", ref.name)
    enums, records = arch.enums(), arch.records()
    if ref.name in enums:
        _arity(ref, 0)
        return ResolvedType("enum", ref.name, decl=enums[ref.name])
    if ref.name in records:
        _arity(ref, 0)
        return ResolvedType("record", ref.name, decl=records[ref.name])
    comp = arch.component(ref.name)
    if comp is not None:
        _arity(ref, len(comp.type_params))
        args = tuple(resolve_type_ref(a, arch, bindings, type_params) for a in ref.args)
        return ResolvedType("component", ref.name, args, decl=comp)
    raise UnknownType(ref.name)


def _arity(ref: TypeRef, expected: int) -> None:
    if len(ref.args) != expected:
        raise ArityMismatch(ref.name, expected, len(ref.args))


def instance_binding(arch: Architecture, sub: SubcomponentInstance) -> dict[str, TypeRef]:
    """Generic parameter binding of a subcomponent's type for this use site."""
    comp = arch.component(sub.type.name)
    if comp is None:
        return {}
    return dict(zip(comp.type_params, sub.type.args))


def default_value(type_ref: TypeRef, arch: Architecture):
    if type_ref.name == "Int":
        return 0
    if type_ref.name == "Bool":
        return False
    if type_ref.name == "String":
        return ""
    enum = arch.enums().get(type_ref.name)
    if enum is not None:
        from arcc.values import EnumValue

        return EnumValue(enum.name, enum.literals[0])
    raise ValueError(f"type {type_ref} has no default value")


def initial_value(var: Variable, arch: Architecture, binding: Mapping[str, TypeRef] | None = None):
    if var.initial is not None and is_literal(var.initial):
        return literal_value(var.initial)
    return default_value(substitute(var.type, binding or {}), arch)


# ---------------------------------------------------------------- dataflow


@dataclass(frozen=True)
class DataflowGraph:
    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]]

    def successors(self, node: str) -> list[str]:
        return sorted(b for a, b in self.edges if a == node)

    def find_cycle(self) -> Optional[list[str]]:
        """One cycle as an instance sequence, rotated to start at its least name."""
        adjacency = {n: self.successors(n) for n in self.nodes}
        state: dict[str, int] = {}
        stack: list[str] = []

        def visit(n: str) -> Optional[list[str]]:
            state[n] = 1
            stack.append(n)
            for m in adjacency.get(n, ()):
                if state.get(m) == 1:
                    cycle = stack[stack.index(m):]
                    i = cycle.index(min(cycle))
                    return cycle[i:] + cycle[:i]
                if m not in state:
                    found = visit(m)
                    if found:
                        return found
            stack.pop()
            state[n] = 2
            return None

        for n in sorted(self.nodes):
            if n not in state:
                found = visit(n)
                if found:
                    return found
        return None

    def least_topological_order(self) -> list[str]:
        """Lexicographically least topological order (Kahn with a min-heap)."""
        indegree = {n: 0 for n in self.nodes}
        for _, b in self.edges:
            indegree[b] += 1
        heap = [n for n, d in indegree.items() if d == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            n = heapq.heappop(heap)
            order.append(n)
            for m in self.successors(n):
                indegree[m] -= 1
                if indegree[m] == 0:
                    heapq.heappush(heap, m)
        if len(order) != len(self.nodes):
            raise ValueError("dataflow graph is cyclic")
        return order


def dataflow_graph(owner: ComponentType) -> DataflowGraph:
    """Edge a->b iff a non-delayed connector runs from an out-port of a to an in-port of b."""
    nodes = tuple(s.name for s in owner.subcomponents)
    names = set(nodes)
    edges = set()
    for con in owner.connectors:
        if con.delayed or con.source.instance not in names:
            continue
        for t in con.targets:
            if t.instance in names:
                edges.add((con.source.instance, t.instance))
    return DataflowGraph(nodes, frozenset(edges))


# ---------------------------------------------------------------- flattening


def join_path(parent: str, name: str) -> str:
    return f"{parent}/{name}" if parent else name


def endpoint_name(path: str, port: str) -> str:
    """Fully-qualified port name; root boundary ports are bare."""
    return f"{path}.{port}" if path else port


@dataclass(frozen=True)
class Instance:
    path: str
    component_type: str
    behavior: Optional[BehaviorAttachment]
    var_init: Mapping[str, Any]
    params: Mapping[str, Any]
    ports: tuple[PortDecl, ...]  # generic parameters substituted


@dataclass(frozen=True)
class Link:
    source: tuple[str, str]  # (path, port)
    target: tuple[str, str]
    delayed: bool = False

    @property
    def source_name(self) -> str:
        return endpoint_name(*self.source)

    @property
    def target_name(self) -> str:
        return endpoint_name(*self.target)


@dataclass(frozen=True)
class InstanceNetwork:
    instances: tuple[Instance, ...]
    links: tuple[Link, ...]
    composites: tuple[tuple[str, str], ...]  # (path, component type), root path ""
    boundary_ports: tuple[PortDecl, ...]

    def instance(self, path: str) -> Optional[Instance]:
        return next((i for i in self.instances if i.path == path), None)

    @property
    def paths(self) -> list[str]:
        return [i.path for i in self.instances]


def flatten_architecture(arch: Architecture) -> InstanceNetwork:
    """Expand the hierarchy below the root into atomic instances and contracted links."""
    instances: list[Instance] = []
    composites: list[tuple[str, str]] = []
    atomic_paths: set[str] = set()
    # port node -> list of (port node, delayed)
    edges: dict[tuple[str, str], list[tuple[tuple[str, str], bool]]] = {}

    def visit(type_name: str, path: str, binding: Mapping[str, TypeRef], params: Mapping[str, Any]):
        comp = arch.component_types[type_name]
        ports = tuple(PortDecl(p.name, p.direction, substitute(p.type, binding), p.loc) for p in comp.ports)
        if comp.is_atomic:
            atomic_paths.add(path)
            var_init = {v.name: initial_value(v, arch, binding) for v in comp.variables}
            instances.append(Instance(path, type_name, comp.behavior, var_init, dict(params), ports))
            return
        composites.append((path, type_name))
        for sub in comp.subcomponents:
            child_comp = arch.component_types[sub.type.name]
            child_binding = dict(zip(child_comp.type_params, (substitute(a, binding) for a in sub.type.args)))
            child_params = {
                cp.name: literal_value(arg) for cp, arg in zip(child_comp.config_params, sub.args)
            }
            visit(sub.type.name, join_path(path, sub.name), child_binding, child_params)
        for con in comp.connectors:
            src = (join_path(path, con.source.instance) if con.source.instance else path, con.source.port)
            for t in con.targets:
                dst = (join_path(path, t.instance) if t.instance else path, t.port)
                edges.setdefault(src, []).append((dst, con.delayed))

    root = arch.root_component
    visit(arch.root, "", {}, {})

    directions = {(i.path, p.name): p.direction for i in instances for p in i.ports}

    def is_origin(node: tuple[str, str]) -> bool:
        path, port = node
        if path == "":
            decl = root.port(port)
            return decl is not None and decl.direction == "in"
        return directions.get(node) == "out"

    def is_terminal(node: tuple[str, str]) -> bool:
        # atomic in-port, or an out-port of the root boundary
        return node[0] in atomic_paths or node[0] == ""

    links: set[Link] = set()

    def follow(origin, node, delayed, seen):
        for nxt, d in edges.get(node, ()):
            if nxt in seen:
                continue
            if is_terminal(nxt):
                links.add(Link(origin, nxt, delayed or d))
            else:
                follow(origin, nxt, delayed or d, seen | {nxt})

    for node in sorted(edges):
        if is_origin(node):
            follow(node, node, False, {node})

    ordered_links = tuple(sorted(links, key=lambda l: (l.source, l.target, l.delayed)))
    return InstanceNetwork(
        tuple(sorted(instances, key=lambda i: i.path)),
        ordered_links,
        tuple(sorted(composites)),
        root.ports,
    )
