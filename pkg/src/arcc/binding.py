"""Binding platform-independent architectures to platform-specific implementations."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from arcc import diagnostics as dg
from arcc.diagnostics import Diagnostic, Location
from arcc.model import Architecture

STUB = "stub"
EXTERN = "extern"


@dataclass(frozen=True)
class ImplRef:
    kind: str  # stub | extern
    locator: str
    loc: Optional[Location] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return f'{self.kind} "{self.locator}"'


@dataclass(frozen=True)
class BindingModel:
    name: str
    root: str
    platform: str
    entries: Mapping[str, ImplRef]
    loc: Optional[Location] = field(default=None, compare=False, repr=False)
    # directory stub locators are relative to
    base_dir: Optional[Path] = field(default=None, compare=False, repr=False)

    def resolve_locator(self, ref: ImplRef) -> Path:
        return (self.base_dir or Path(".")) / ref.locator


@dataclass(frozen=True)
class BoundArchitecture:
    architecture: Architecture
    platform: str
    resolved_impls: Mapping[str, ImplRef]
    binding: Optional[BindingModel] = field(default=None, compare=False, repr=False)


def validate_binding(arch: Architecture, b: BindingModel) -> list[Diagnostic]:
    where = b.loc or Location("<binding>")
    diags: list[Diagnostic] = []
    if b.root != arch.root:
        diags.append(dg.error(dg.ROOT_MISMATCH,
                              f"binding '{b.name}' is for '{b.root}' but the architecture root is '{arch.root}'",
                              where, b.root, arch.root))
    reachable = arch.reachable_types()
    for type_name, ref in b.entries.items():
        loc = ref.loc or where
        comp = arch.component(type_name)
        if comp is None:
            diags.append(dg.error(dg.BAD_BINDING_TARGET, f"binding names unknown component type '{type_name}'",
                                  loc, type_name))
        elif not comp.is_atomic:
            diags.append(dg.error(dg.BAD_BINDING_TARGET,
                                  f"binding names composed component type '{type_name}'", loc, type_name))
        elif comp.behavior is not None:
            diags.append(dg.error(dg.OVER_BINDING,
                                  f"over-binding: '{type_name}' already has a {comp.behavior.language} behavior",
                                  loc, type_name))
        elif type_name not in reachable:
            diags.append(dg.warning(dg.UNREACHABLE_BINDING,
                                    f"binding names '{type_name}', which is unreachable from '{arch.root}'",
                                    loc, type_name))
    unbound = [
        name for name in sorted(reachable)
        if arch.component_types[name].is_atomic
        and arch.component_types[name].behavior is None
        and name not in b.entries
    ]
    if unbound:
        diags.append(dg.error(dg.UNBOUND_COMPONENTS,
                              f"unbound atomic component types without behavior: {', '.join(unbound)}",
                              where, *unbound))
    return diags


def apply_binding(arch: Architecture, b: BindingModel) -> BoundArchitecture:
    reachable = set(arch.reachable_types())
    impls = {name: ref for name, ref in sorted(b.entries.items())
             if name in reachable and arch.component_types[name].behavior is None}
    return BoundArchitecture(arch, b.platform, impls, b)
