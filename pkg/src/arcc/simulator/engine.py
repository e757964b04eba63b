"""Time-synchronous execution of a flattened instance network."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from arcc.behaviors.activity import ActivityGraph, activity_step
from arcc.behaviors.automaton import automaton_step
from arcc.behaviors.evaluate import RuntimeEvalError
from arcc.model import endpoint_name
from arcc.simulator.manifest import SimManifest
from arcc.simulator.stub import Row
from arcc.values import MaybeValue, format_cell

Node = tuple[str, str]


class ScheduleViolation(RuntimeError):
    """An instance stepped before an instant-link source feeding it."""


@dataclass(frozen=True)
class Trace:
    columns: tuple[str, ...]
    rows: tuple[tuple[MaybeValue, ...], ...]

    def column(self, name: str) -> list[MaybeValue]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        lines += [",".join(format_cell(v) for v in row) for row in self.rows]
        return "\n".join(lines) + "\n"


def trace_columns(m: SimManifest) -> list[Node]:
    nodes = [(path, p.name) for path, inst in m.instances.items() for p in inst.ports]
    if "" not in m.instances:
        nodes += [("", p.name) for p in m.boundary_ports]
    return sorted(nodes, key=lambda n: endpoint_name(*n))


def simulate(m: SimManifest, ticks: int, external_inputs: Optional[Sequence[Row]] = None,
             check_schedule: bool = True) -> Trace:
    """Run ``ticks`` rounds; returns one row per tick over all port columns."""
    if ticks < 0:
        raise ValueError("ticks must be non-negative")
    external_inputs = external_inputs or ()
    order = m.run_order()
    behavioral = [p for p in order if m.instances[p].behavior is not None]
    stubs = sorted(p for p, inst in m.instances.items() if inst.stub is not None)
    outgoing: dict[Node, list[tuple[int, Node, bool]]] = {}
    incoming_instant: dict[str, set[str]] = {}
    for i, link in enumerate(m.links):
        outgoing.setdefault(link.source, []).append((i, link.target, link.delayed))
        if not link.delayed:
            incoming_instant.setdefault(link.target[0], set()).add(link.source[0])
    behavioral_set = set(behavioral)

    states = {p: m.instances[p].behavior.initial for p in behavioral
              if not isinstance(m.instances[p].behavior, ActivityGraph)}
    env_vars = {p: dict(m.instances[p].vars) for p in behavioral}
    buffers: dict[int, MaybeValue] = {}
    columns = trace_columns(m)
    root_inputs = [p.name for p in m.boundary_ports if p.direction == "in"] if "" not in m.instances else []
    rows = []

    for tick in range(ticks):
        ports: dict[Node, MaybeValue] = {}

        def write(node: Node, value: MaybeValue) -> None:
            if value is None:
                return
            ports[node] = value
            for index, target, delayed in outgoing.get(node, ()):
                if delayed:
                    buffers[index] = value
                else:
                    ports[target] = value

        pending = dict(buffers)
        buffers.clear()
        for index, value in pending.items():
            ports[m.links[index].target] = value
        row = external_inputs[tick] if tick < len(external_inputs) else {}
        for name in root_inputs:
            write(("", name), row.get(name))
        for path in stubs:
            inst = m.instances[path]
            stub_row = inst.stub_rows[tick] if tick < len(inst.stub_rows) else {}
            for p in inst.out_ports():
                write((path, p.name), stub_row.get(p.name))
        stepped: set[str] = set()
        for path in behavioral:
            if check_schedule:
                early = sorted(s for s in incoming_instant.get(path, ()) if s in behavioral_set and s not in stepped)
                if early:
                    raise ScheduleViolation(f"tick {tick}: '{path}' stepped before its source(s) {early}")
            inst = m.instances[path]
            inputs = {p.name: ports.get((path, p.name)) for p in inst.in_ports()}
            try:
                if isinstance(inst.behavior, ActivityGraph):
                    result = activity_step(inst.behavior, env_vars[path], inputs, inst.params)
                else:
                    result = automaton_step(inst.behavior, states[path], env_vars[path], inputs, inst.params)
                    states[path] = result.next_state
            except RuntimeEvalError as exc:
                exc.tick, exc.instance = tick, path
                raise
            env_vars[path] = result.vars
            for p in inst.out_ports():
                write((path, p.name), result.outputs.get(p.name))
            stepped.add(path)
        rows.append(tuple(ports.get(node) for node in columns))

    return Trace(tuple(endpoint_name(*n) for n in columns), tuple(rows))
