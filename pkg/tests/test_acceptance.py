"""Acceptance criteria, one or more tests per criterion; the summary prints PASS/FAIL per criterion."""

from __future__ import annotations

import random
import subprocess
import sys
from pathlib import Path

import pytest

from arcc import expr as ex
from arcc.behaviors.automaton import check_determinism
from arcc.behaviors.evaluate import is_true
from arcc.behaviors.typecheck import ComponentSymbols
from arcc.binding import apply_binding, validate_binding
from arcc.checks.framework import run_checks
from arcc.checks.pool import check_architecture
from arcc.cli import run_cli
from arcc.diagnostics import DiagnosticError
from arcc.frontend.languages import AUTOMATON, BASE, BehaviorRegistry, default_registry
from arcc.frontend.parser import (parse_architecture, parse_binding, parse_data_model,
                                  parse_generator_model)
from arcc.frontend.printer import print_binding, print_component, print_data_model, print_generator_model
from arcc.frontend.project import load_sources
from arcc.genfw.interp import emit_interp_manifest
from arcc.genfw.model import GeneratorModel
from arcc.genfw.plan import compose_plan
from arcc.genfw.registry import build_registry
from arcc.genfw.run import GenerationAborted, run_generation
from arcc.simulator.engine import simulate
from arcc.simulator.manifest import parse_manifest
from support import (COMPONENT_TYPES, CORPUS, FIXTURES, GENERATORS, RANDOM_AUTOMATON_TYPES, corpus_text,
                     dag_architecture_sources, linear_extension, load_corpus, random_automaton_source,
                     random_concrete_env, random_dag, unbound)

ROOT = Path(__file__).resolve().parents[1]


def model_args():
    return [str(p) for p in sorted(CORPUS.glob("*.arc"))] + [str(CORPUS / "ExplorerTypes.types"),
                                                             "--root", "ExplorerBot"]


def bind(corpus, name):
    b = parse_binding(corpus_text(name), str(CORPUS / name))
    assert validate_binding(corpus.architecture, b) == []
    return apply_binding(corpus.architecture, b)


# ---------------------------------------------------------------- AC1

@pytest.mark.criterion("AC1", "corpus fidelity: ten component types, Timer/Controller behaviors, check passes")
def test_ac1_corpus_fidelity(corpus):
    arch = corpus.architecture
    assert sorted(arch.component_types) == sorted(COMPONENT_TYPES)
    assert arch.component("Timer").behavior.language == "activity"
    assert arch.component("Controller").behavior.language == "automaton"
    report = check_architecture(arch)
    assert report.passed and [d for d in report.diagnostics if d.is_error] == []
    assert run_cli(["check", *model_args(), "--profile", "scheduled"]) == 0


# ---------------------------------------------------------------- AC2

EC = "ExplorationControl.arc"


@pytest.mark.criterion("AC2", "schedule extension: profile gate and C007 fixture pair")
def test_ac2_schedule_only_under_scheduled_profile():
    with pytest.raises(DiagnosticError) as info:
        load_corpus(profile=BASE)
    [diag] = info.value.diagnostics
    assert diag.code == "P003" and diag.message == "schedule requires profile=scheduled"
    line = next(i for i, l in enumerate(corpus_text(EC).splitlines(), 1) if l.strip().startswith("schedule"))
    assert diag.location.file.endswith(EC) and diag.location.line == line
    assert load_corpus().architecture.component("ExplorationControl").schedule == ("controller", "logger")


@pytest.mark.criterion("AC2", "schedule extension: profile gate and C007 fixture pair")
@pytest.mark.parametrize("schedule, message", [
    ("controller, logger", None),
    ("logger, controller", "schedule violates dataflow order (controller must precede logger)"),
    ("controller", "schedule must list every subcomponent exactly once"),
])
def test_ac2_c007_fixture_pair(pool, schedule, message):
    text = corpus_text(EC).replace("schedule controller, logger;", f"schedule {schedule};")
    arch = load_corpus(**{EC: text}).architecture
    errors = run_checks(arch, ["C007"], pool).errors_for("C007")
    if message is None:
        assert errors == []
    else:
        assert len(errors) == 1 and errors[0].message.startswith(message)


# ---------------------------------------------------------------- AC3

@pytest.mark.criterion("AC3", "embedding: activity registration toggles Timer, base parser suite unchanged")
def test_ac3_activity_registration():
    without = BehaviorRegistry([AUTOMATON])
    with pytest.raises(DiagnosticError) as info:
        load_corpus(registry=without)
    [diag] = info.value.diagnostics
    assert diag.code == "P002" and "'activity'" in diag.message
    timer = corpus_text("Timer.arc").splitlines()
    line = next(i for i, l in enumerate(timer, 1) if l.strip().startswith("activity {"))
    assert diag.location.file.endswith("Timer.arc") and diag.location.line == line
    project = load_corpus(registry=default_registry())
    assert project.architecture.component("Timer").behavior.language == "activity"


@pytest.mark.criterion("AC3", "embedding: activity registration toggles Timer, base parser suite unchanged")
def test_ac3_base_parser_suite_unchanged():
    result = subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider",
                             str(ROOT / "tests" / "test_frontend_parser.py")],
                            cwd=ROOT, capture_output=True, text=True)
    assert result.returncode == 0, result.stdout + result.stderr


@pytest.mark.criterion("AC3", "embedding: activity registration toggles Timer, base parser suite unchanged")
def test_ac3_registry_locality():
    empty = BehaviorRegistry()
    for path in sorted(CORPUS.glob("*.arc")):
        text = path.read_text()
        if "automaton {" in text or "activity {" in text:
            continue
        assert parse_architecture(text, registry=empty, file=str(path)) == \
            parse_architecture(text, registry=default_registry(), file=str(path))


# ---------------------------------------------------------------- AC4

@pytest.mark.criterion("AC4", "platform independence: one architecture, two bindings, two generations")
def test_ac4_platform_independence(corpus, registry, pool, tmp_path):
    sim, lejos = bind(corpus, "sim.bind"), bind(corpus, "lejos.bind")
    assert sim.architecture == lejos.architecture
    assert sim.architecture is corpus.architecture and lejos.architecture is corpus.architecture
    assert (sim.platform, lejos.platform) == ("interp", "textgen")
    assert sorted(sim.resolved_impls) == sorted(lejos.resolved_impls) == ["Button", "Logger", "Motor", "UltraSonic"]
    for bound in (sim, lejos):
        plan = compose_plan(registry, bound.platform, bound)
        artifacts = run_generation(plan, bound, tmp_path / bound.platform, registry, pool)
        assert artifacts.paths and all((tmp_path / bound.platform / p).is_file() for p in artifacts.paths)


# ---------------------------------------------------------------- AC5

@pytest.mark.criterion("AC5", "composition: one plan per platform, missing and ambiguous generators")
def test_ac5_plans(corpus, registry):
    assert len(registry) == 8
    for platform, prefix in (("interp", "Interp"), ("textgen", "Text")):
        plan = compose_plan(registry, platform, bind(corpus, "sim.bind" if platform == "interp" else "lejos.bind"))
        assert plan.component_gen.kind == "component" and plan.type_gen.kind == "type"
        assert {g.kind for g in plan.behavior_gens.values()} == {"behavior"}
        assert plan.component_gen.name == f"{prefix}CompGen" and plan.type_gen.name == f"{prefix}TypeGen"
        assert {k: g.name for k, g in plan.behavior_gens.items()} == {
            "automaton": f"{prefix}AutomatonGen", "activity": f"{prefix}ActivityGen"}
        assert {"DeterministicAutomaton", "GuardCoverage"} <= set(plan.checks)


@pytest.mark.criterion("AC5", "composition: one plan per platform, missing and ambiguous generators")
def test_ac5_missing_behavior_generator(corpus, registry):
    with pytest.raises(DiagnosticError) as info:
        compose_plan(registry.without("InterpAutomatonGen"), "interp", bind(corpus, "sim.bind"))
    [diag] = info.value.diagnostics
    assert diag.code == "X003" and diag.data == ("automaton", "interp-rts-1")


@pytest.mark.criterion("AC5", "composition: one plan per platform, missing and ambiguous generators")
def test_ac5_ambiguity_and_override(corpus, registry, pool, tmp_path):
    twin = GeneratorModel("InterpCompGenB", "component", platform="interp", rts="interp-rts-1", entrypoint="*")
    doubled = build_registry([*registry.models, twin], pool)
    bound = bind(corpus, "sim.bind")
    with pytest.raises(DiagnosticError) as info:
        compose_plan(doubled, "interp", bound)
    [diag] = info.value.diagnostics
    assert diag.code == "X002" and "InterpCompGen, InterpCompGenB" in diag.message
    assert compose_plan(doubled, "interp", bound, "InterpCompGenB").component_gen is twin
    gens = tmp_path / "gens"
    gens.mkdir()
    for p in GENERATORS.glob("*.gen"):
        (gens / p.name).write_text(p.read_text())
    (gens / "Twin.gen").write_text(print_generator_model(twin))
    args = ["generate", *model_args(), "--binding", str(CORPUS / "sim.bind"), "--generators", str(gens),
            "--platform", "interp", "-o", str(tmp_path / "out")]
    assert run_cli(args) == 1 and not (tmp_path / "out").exists()
    assert run_cli(args + ["--component-generator", "InterpCompGenB"]) == 0


# ---------------------------------------------------------------- AC6

OVERLAP = corpus_text("Controller.arc").replace(
    "[present(distance) && distance < 20]", "[present(distance) && distance < 10]").replace(
    "[present(distance) && distance >= 20]", "[present(distance) && distance > 5]")


@pytest.mark.criterion("AC6", "determinism gate: overlapping guards rejected with a valid witness")
def test_ac6_determinism_gate(registry, pool, tmp_path):
    project = load_corpus(**{"Controller.arc": OVERLAP})
    errors = [d for d in check_architecture(project.architecture).diagnostics if d.is_error]
    [diag] = errors
    assert diag.code == "G001"
    witness = diag.data[0]
    assert witness.state == "EXPLORING" and 5 < witness.env["distance"] < 10
    automaton = project.architecture.component("Controller").behavior.model
    enabled = [i for i, t in automaton.outgoing("EXPLORING") if is_true(t.guard, witness.env)]
    assert len(enabled) >= 2 and tuple(enabled) == witness.transitions

    b = parse_binding(corpus_text("sim.bind"), str(CORPUS / "sim.bind"))
    bound = apply_binding(project.architecture, b)
    plan = compose_plan(registry, "interp", bound)
    out = tmp_path / "out"
    with pytest.raises(GenerationAborted) as info:
        run_generation(plan, bound, out, registry, pool)
    assert [d.code for d in info.value.diagnostics] == ["G001"]
    assert not out.exists() and list(tmp_path.iterdir()) == []


# ---------------------------------------------------------------- AC7

@pytest.mark.criterion("AC7", "end-to-end trace oracle: 30 ticks byte-match the expected fixture")
def test_ac7_end_to_end_trace(tmp_path):
    out, trace = tmp_path / "out", tmp_path / "t.csv"
    assert run_cli(["generate", *model_args(), "--platform", "interp", "--binding", str(CORPUS / "sim.bind"),
                    "--generators", str(GENERATORS), "-o", str(out)]) == 0
    assert run_cli(["simulate", str(out / "manifest.json"), "--ticks", "30", "--trace", str(trace)]) == 0
    expected = (FIXTURES / "explorer_trace_30.csv").read_bytes()
    assert trace.read_bytes() == expected
    oracle = subprocess.run([sys.executable, str(ROOT / "tests" / "oracles" / "explorer_oracle.py"), "--check"])
    assert oracle.returncode == 0


# ---------------------------------------------------------------- AC8

@pytest.mark.criterion("AC8", "schedule invariance over 100 random DAG architectures")
def test_ac8_schedule_invariance():
    rng = random.Random(20240608)
    checked = distinct = 0
    while checked < 100:
        names, instant, delayed = random_dag(rng)
        sources = dag_architecture_sources(rng, names, instant, delayed)
        first, second = linear_extension(rng, names, instant), linear_extension(rng, names, instant)
        scheduled = [(f, t.replace("  instance", f"  schedule {', '.join(second)};\n  instance", 1)
                      if f == "R.arc" else t) for f, t in sources]
        arch = load_sources(scheduled, "R").architecture
        assert check_architecture(arch).passed
        doc = emit_interp_manifest(_plan(), unbound(arch))
        inputs = [{"ext": rng.choice([None, rng.randint(-8, 8)])} for _ in range(20)]
        traces = []
        for order in (first, second):
            doc["schedules"] = {"": order}
            traces.append(simulate(parse_manifest(doc, Path(".")), 20, inputs).to_csv())
        assert traces[0] == traces[1]
        checked += 1
        distinct += first != second
    assert checked == 100 and distinct >= 30


def _plan():
    from arcc.genfw.artifacts import GenerationPlan

    gen = GeneratorModel("G", "component", platform="interp", rts="interp-rts-1", entrypoint="*")
    return GenerationPlan(gen, {}, GeneratorModel("T", "type", platform="interp"), (), "interp", "interp-rts-1")


# ---------------------------------------------------------------- AC9

@pytest.mark.criterion("AC9", "determinism-check soundness on 50 + 50 random automata")
def test_ac9_determinism_soundness():
    rng = random.Random(99)
    deterministic, nondeterministic = 0, 0
    attempts = 0
    while deterministic < 50 or nondeterministic < 50:
        attempts += 1
        assert attempts < 5000
        source = random_automaton_source(rng)
        arch = load_sources([("Auto.arc", source), ("Palette.types", RANDOM_AUTOMATON_TYPES)], "Auto").architecture
        comp = arch.component("Auto")
        symbols = ComponentSymbols(comp, arch)
        automaton = comp.behavior.model
        verdict = check_determinism(automaton, symbols.atoms(), symbols.enums)
        if verdict.approximate:
            continue
        if verdict.deterministic and deterministic < 50:
            deterministic += 1
            for state in automaton.states:
                guards = [t.guard for _, t in automaton.outgoing(state)]
                for _ in range(10_000):
                    env = random_concrete_env(rng)
                    assert sum(is_true(g, env) for g in guards) <= 1, (source, state, env)
        elif not verdict.deterministic and nondeterministic < 50:
            nondeterministic += 1
            w = verdict.witness
            enabled = [i for i, t in automaton.outgoing(w.state) if is_true(t.guard, w.env)]
            assert len(enabled) >= 2 and tuple(enabled) == w.transitions, (source, w)
    assert (deterministic, nondeterministic) == (50, 50)


# ---------------------------------------------------------------- AC10

@pytest.mark.criterion("AC10", "round trip of every corpus file and byte-identical reruns")
@pytest.mark.parametrize("path", sorted(p.name for p in CORPUS.rglob("*") if p.suffix in (".arc", ".types", ".bind", ".gen")))
def test_ac10_round_trip(path):
    file = next(CORPUS.rglob(path))
    text = file.read_text()
    parse, show = {".arc": (lambda t: parse_architecture(t, file=str(file)), print_component),
                   ".types": (parse_data_model, print_data_model),
                   ".bind": (parse_binding, print_binding),
                   ".gen": (parse_generator_model, print_generator_model)}[file.suffix]
    first = parse(text)
    printed = show(first)
    assert parse(printed) == first
    assert show(parse(printed)) == printed


@pytest.mark.criterion("AC10", "round trip of every corpus file and byte-identical reruns")
@pytest.mark.parametrize("platform, binding", [("interp", "sim.bind"), ("textgen", "lejos.bind")])
def test_ac10_reproducible_generation(tmp_path, platform, binding):
    outputs = []
    for run in ("a", "b"):
        out = tmp_path / run
        assert run_cli(["generate", *model_args(), "--platform", platform, "--binding", str(CORPUS / binding),
                        "--generators", str(GENERATORS), "-o", str(out)]) == 0
        outputs.append({p.relative_to(out).as_posix(): p.read_bytes() for p in sorted(out.rglob("*")) if p.is_file()})
        if platform == "interp":
            trace = tmp_path / f"{run}.csv"
            assert run_cli(["simulate", str(out / "manifest.json"), "--ticks", "30", "--trace", str(trace)]) == 0
    assert outputs[0] == outputs[1]
    if platform == "interp":
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
