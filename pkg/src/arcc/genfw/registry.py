"""Loading and validating the generator registry."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Optional

from arcc import diagnostics as dg
from arcc.checks.framework import RulePool
from arcc.diagnostics import Diagnostic, DiagnosticError, Location, error
from arcc.frontend.parser import parse_generator_model
from arcc.genfw.artifacts import Emitter
from arcc.genfw.model import GeneratorModel


@dataclass(frozen=True)
class GeneratorRegistry:
    models: tuple[GeneratorModel, ...]  # sorted by name
    emitters: Mapping[str, Emitter]

    def get(self, name: str) -> Optional[GeneratorModel]:
        return next((m for m in self.models if m.name == name), None)

    def of_kind(self, kind: str) -> list[GeneratorModel]:
        return [m for m in self.models if m.kind == kind]

    def emitter(self, model: GeneratorModel) -> Emitter:
        return self.emitters[model.emitter]

    def without(self, name: str) -> "GeneratorRegistry":
        return GeneratorRegistry(tuple(m for m in self.models if m.name != name), self.emitters)

    def __len__(self) -> int:
        return len(self.models)


def validate_generators(models: Iterable[GeneratorModel], pool: RulePool,
                        emitters: Mapping[str, Emitter]) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    first: dict[str, GeneratorModel] = {}
    for m in models:
        where = m.loc or Location("<generator>")
        if m.name in first:
            diags.append(error(dg.DUPLICATE_GENERATOR, f"duplicate generator '{m.name}' (first declared at "
                                                       f"{first[m.name].loc})", where, m.name))
            continue
        first[m.name] = m
        if m.emitter not in emitters:
            diags.append(error(dg.UNKNOWN_EMITTER, f"generator '{m.name}' needs emitter '{m.emitter}', "
                                                   "which is not built in", where, m.emitter))
        for rule in m.requires:
            if rule not in pool:
                diags.append(error(dg.UNKNOWN_RULE, f"generator '{m.name}' requires unknown check rule '{rule}'",
                                   where, rule))
    return diags


def build_registry(models: Iterable[GeneratorModel], pool: RulePool,
                   emitters: Optional[Mapping[str, Emitter]] = None) -> GeneratorRegistry:
    if emitters is None:
        from arcc.genfw.emitters import EMITTERS as emitters
    models = list(models)
    diags = validate_generators(models, pool, emitters)
    if diags:
        raise DiagnosticError(diags)
    return GeneratorRegistry(tuple(sorted(models, key=lambda m: m.name)), dict(emitters))


def load_generator_registry(directory: Path | str, pool: RulePool,
                            emitters: Optional[Mapping[str, Emitter]] = None) -> GeneratorRegistry:
    """Parse every ``.gen`` file in ``directory`` and validate the set."""
    directory = Path(directory)
    if not directory.is_dir():
        raise DiagnosticError([error(dg.IO_ERROR, "generators directory not found", Location(str(directory)))])
    models, diags = [], []
    for path in sorted(directory.glob("*.gen")):
        try:
            models.append(parse_generator_model(path.read_text(encoding="utf-8"), str(path)))
        except DiagnosticError as exc:
            diags.extend(exc.diagnostics)
        except OSError as exc:
            diags.append(error(dg.IO_ERROR, f"cannot read file: {exc.strerror}", Location(str(path))))
    if diags:
        raise DiagnosticError(diags)
    return build_registry(models, pool, emitters)
