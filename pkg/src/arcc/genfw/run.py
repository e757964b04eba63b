"""Executing a generation plan: check gate, emitters in fixed order, staged output."""

from __future__ import annotations

import os
import shutil
import tempfile
from pathlib import Path
from typing import Optional

from arcc.binding import BoundArchitecture
from arcc.checks.framework import CheckReport, RulePool, run_checks
from arcc.checks.pool import build_pool, default_rule_ids
from arcc.diagnostics import DiagnosticError
from arcc.frontend.languages import PROFILES, SCHEDULED
from arcc.genfw.artifacts import ArtifactSet, GenerationPlan
from arcc.genfw.registry import GeneratorRegistry


class GenerationAborted(DiagnosticError):
    """A required check failed; nothing was written."""

    def __init__(self, report: CheckReport):
        self.report = report
        super().__init__([d for d in report.diagnostics if d.is_error])


def gate_checks(plan: GenerationPlan, bound: BoundArchitecture, pool: Optional[RulePool] = None) -> CheckReport:
    profile = PROFILES.get(bound.architecture.profile, SCHEDULED)
    pool = build_pool(profile=profile) if pool is None else pool
    ids = set(default_rule_ids(profile)) | {pool.canonical(c) for c in plan.checks}
    return run_checks(bound.architecture, ids, pool)


def emit_artifacts(plan: GenerationPlan, bound: BoundArchitecture, generators: GeneratorRegistry,
                   out_dir: Optional[Path] = None) -> ArtifactSet:
    """Type generator, then behavior generators, then the component generator."""
    arch = bound.architecture
    type_emit = generators.emitter(plan.type_gen).emit
    type_parts = {dm.name: type_emit(bound, dm) for dm in arch.data_models}
    behavior_parts = {}
    for name in sorted(arch.reachable_types()):
        comp = arch.component_types[name]
        if comp.is_atomic and comp.behavior is not None:
            gen = plan.behavior_gens[comp.behavior.language]
            behavior_parts[name] = generators.emitter(gen).emit(bound, comp)
    component = generators.emitter(plan.component_gen).emit
    return component(plan, bound, type_parts, behavior_parts, {"out_dir": out_dir})


def write_artifacts(artifacts: ArtifactSet, out_dir: Path) -> None:
    """Write into a staging directory, then move every file into place."""
    out_dir = Path(out_dir)
    parent = out_dir.resolve().parent
    parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".arcc-staging-", dir=parent))
    try:
        for rel, content in artifacts.files:
            target = staging / rel
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_bytes(content)
        out_dir.mkdir(parents=True, exist_ok=True)
        for rel, _ in artifacts.files:
            final = out_dir / rel
            final.parent.mkdir(parents=True, exist_ok=True)
            os.replace(staging / rel, final)
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def run_generation(plan: GenerationPlan, bound: BoundArchitecture, out_dir: Path | str,
                   generators: GeneratorRegistry, pool: Optional[RulePool] = None) -> ArtifactSet:
    """Check, emit and write; a failed check raises ``GenerationAborted`` before any file is written."""
    out_dir = Path(out_dir)
    report = gate_checks(plan, bound, pool)
    if not report.passed:
        raise GenerationAborted(report)
    artifacts = emit_artifacts(plan, bound, generators, out_dir)
    write_artifacts(artifacts, out_dir)
    return artifacts
