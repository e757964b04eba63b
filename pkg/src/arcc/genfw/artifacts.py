from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import PurePosixPath
from typing import Callable, Mapping, Optional

from arcc.genfw.model import GeneratorModel


@dataclass(frozen=True)
class GenerationPlan:
    component_gen: GeneratorModel
    behavior_gens: Mapping[str, GeneratorModel]  # language id -> generator
    type_gen: GeneratorModel
    checks: tuple[str, ...]  # union of required checks, sorted
    platform: str
    rts: str

    def generators(self) -> list[GeneratorModel]:
        return [self.type_gen, *(self.behavior_gens[k] for k in sorted(self.behavior_gens)), self.component_gen]


@dataclass(frozen=True)
class ArtifactSet:
    files: tuple[tuple[str, bytes], ...]
    manifest_path: Optional[str] = None

    def __post_init__(self):
        paths = [p for p, _ in self.files]
        if len(set(paths)) != len(paths):
            raise ValueError("artifact paths must be unique")
        for p in paths:
            pure = PurePosixPath(p)
            if pure.is_absolute() or ".." in pure.parts:
                raise ValueError(f"artifact path {p!r} must be relative")

    @property
    def paths(self) -> list[str]:
        return [p for p, _ in self.files]

    def content(self, path: str) -> bytes:
        return dict(self.files)[path]


@dataclass(frozen=True)
class Emitter:
    """A built-in emitter.

    Type emitters: ``emit(bound, data_model)``; behavior emitters: ``emit(bound, component)``;
    component emitters: ``emit(plan, bound, type_parts, behavior_parts, context) -> ArtifactSet``
    where ``*_parts`` map model/component names to what the other emitters returned.
    """

    name: str
    kind: str
    emit: Callable = field(compare=False)
    impl_kinds: frozenset[str] = frozenset()  # component emitters: supported ImplRef kinds
