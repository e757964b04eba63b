from __future__ import annotations

from arcc.diagnostics import Diagnostic, error
from arcc.model import ComponentType, dataflow_graph

SCHEDULE_RULE = "C007"
CYCLE_RULE = "C008"


def check_schedule_valid(owner: ComponentType) -> list[Diagnostic]:
    """A schedule must list every direct subcomponent once, in a dataflow-respecting order."""
    if owner.schedule is None:
        return []
    where = owner.schedule_loc or owner.loc
    if owner.is_atomic:
        return [error(SCHEDULE_RULE, f"schedule on atomic component '{owner.name}'", where)]
    names = [s.name for s in owner.subcomponents]
    listed = list(owner.schedule)
    if sorted(listed) != sorted(names):
        missing = sorted(set(names) - set(listed))
        extra = sorted(set(listed) - set(names))
        repeated = sorted({n for n in listed if listed.count(n) > 1})
        detail = "; ".join(part for part in (
            f"missing {', '.join(missing)}" if missing else "",
            f"unknown {', '.join(extra)}" if extra else "",
            f"repeated {', '.join(repeated)}" if repeated else "") if part)
        return [error(SCHEDULE_RULE, f"schedule must list every subcomponent exactly once ({detail})", where)]
    position = {n: i for i, n in enumerate(listed)}
    diags = []
    for a, b in sorted(dataflow_graph(owner).edges):
        if position[a] > position[b]:
            diags.append(error(SCHEDULE_RULE,
                               f"schedule violates dataflow order ({a} must precede {b})", where, a, b))
    return diags


def check_no_instant_cycles(owner: ComponentType) -> list[Diagnostic]:
    if owner.is_atomic:
        return []
    cycle = dataflow_graph(owner).find_cycle()
    if cycle is None:
        return []
    return [error(CYCLE_RULE,
                  f"instant cycle between subcomponents [{', '.join(cycle)}]; break it with a delayed connector",
                  owner.loc, *cycle)]
