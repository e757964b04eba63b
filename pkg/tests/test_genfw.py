from __future__ import annotations

import json
from pathlib import Path

import pytest

from arcc.binding import BindingModel, BoundArchitecture, ImplRef, apply_binding
from arcc.diagnostics import DiagnosticError
from arcc.frontend.parser import parse_binding, parse_generator_model
from arcc.frontend.project import load_sources
from arcc.genfw.artifacts import ArtifactSet
from arcc.genfw.interp import emit_interp_manifest, schedule_of
from arcc.genfw.model import GeneratorModel
from arcc.genfw.plan import behavior_languages, compose_plan
from arcc.genfw.registry import build_registry, load_generator_registry
from arcc.genfw.run import GenerationAborted, run_generation
from arcc.model import flatten_architecture

from support import CORPUS, corpus_text, load_corpus, unbound

TEXTGEN_FILES = [
    "types/ExplorerTypes.gen.txt",
    "behaviors/Controller.gen.txt", "behaviors/Timer.gen.txt", "behaviors/Translator.gen.txt",
    "components/Button.gen.txt", "components/Controller.gen.txt", "components/ExplorationControl.gen.txt",
    "components/ExplorerBot.gen.txt", "components/Logger.gen.txt", "components/Motor.gen.txt",
    "components/Navigation.gen.txt", "components/Timer.gen.txt", "components/Translator.gen.txt",
    "components/UltraSonic.gen.txt", "main.gen.txt",
]


def bound(corpus, file: str):
    b = parse_binding(corpus_text(file), str(CORPUS / file))
    return apply_binding(corpus.architecture, BindingModel(b.name, b.root, b.platform, b.entries, b.loc, CORPUS))


def gen(name, kind, **kw) -> GeneratorModel:
    return GeneratorModel(name, kind, **kw)


# ---------------------------------------------------------------- registry

def test_corpus_registry(registry):
    assert len(registry) == 8
    assert [m.name for m in registry.of_kind("type")] == ["InterpTypeGen", "TextTypeGen"]
    assert registry.get("InterpAutomatonGen").emitter == "behavior:automaton@interp-rts-1"
    assert registry.get("TextCompGen").emitter == "component:textgen"


def test_duplicate_generator(registry, pool):
    models = list(registry.models) + [registry.get("InterpTypeGen")]
    with pytest.raises(DiagnosticError) as info:
        build_registry(models, pool)
    assert info.value.codes == ["R001"]


def test_unknown_emitter(pool):
    with pytest.raises(DiagnosticError) as info:
        build_registry([gen("G", "type", platform="fpga")], pool)
    assert info.value.codes == ["R002"]


def test_unknown_rule(pool):
    with pytest.raises(DiagnosticError) as info:
        build_registry([gen("G", "type", platform="interp", requires=("NoSuchRule",))], pool)
    assert info.value.codes == ["R003"]


def test_rule_names_and_ids_both_accepted(pool):
    reg = build_registry([gen("G", "type", platform="interp", requires=("C008", "NoInstantCycles"))], pool)
    assert len(reg) == 1


def test_missing_generator_directory(tmp_path, pool):
    with pytest.raises(DiagnosticError) as info:
        load_generator_registry(tmp_path / "nope", pool)
    assert info.value.codes == ["L006"]


@pytest.mark.parametrize("body", [
    "kind component;\n  rts \"r\";\n  entrypoint *;",              # missing platform
    "kind type;\n  platform interp;\n  language automaton;",      # forbidden language
    "kind behavior;\n  language automaton;",                      # missing rts
])
def test_generator_field_rules(body):
    with pytest.raises(DiagnosticError) as info:
        parse_generator_model(f"generator G {{\n  {body}\n}}\n", "G.gen")
    assert "P006" in info.value.codes


# ---------------------------------------------------------------- planning

def test_behavior_languages(corpus):
    assert behavior_languages(unbound(corpus.architecture)) == ["activity", "automaton"]


@pytest.mark.parametrize("file, platform, names", [
    ("sim.bind", "interp", ["InterpTypeGen", "InterpActivityGen", "InterpAutomatonGen", "InterpCompGen"]),
    ("lejos.bind", "textgen", ["TextTypeGen", "TextActivityGen", "TextAutomatonGen", "TextCompGen"]),
])
def test_plan_per_platform(corpus, registry, file, platform, names):
    plan = compose_plan(registry, platform, bound(corpus, file))
    assert [g.name for g in plan.generators()] == names
    assert plan.rts == f"{platform}-rts-1"


def test_plan_checks_union(corpus, registry):
    plan = compose_plan(registry, "interp", bound(corpus, "sim.bind"))
    assert plan.checks == ("DeterministicAutomaton", "GuardCoverage", "NoInstantCycles")


def plan_codes(registry, platform, b, override=None):
    with pytest.raises(DiagnosticError) as info:
        compose_plan(registry, platform, b, override)
    return info.value.codes


def test_platform_mismatch(corpus, registry):
    assert plan_codes(registry, "textgen", bound(corpus, "sim.bind")) == ["X007"]


def test_missing_component_generator(corpus, registry):
    assert plan_codes(registry.without("InterpCompGen"), "interp", bound(corpus, "sim.bind")) == ["X001"]


def test_ambiguous_component_generator_and_override(corpus, registry, pool):
    extra = gen("OtherComp", "component", platform="interp", rts="interp-rts-1", entrypoint="ExplorerBot")
    reg = build_registry(list(registry.models) + [extra], pool)
    b = bound(corpus, "sim.bind")
    assert plan_codes(reg, "interp", b) == ["X002"]
    assert compose_plan(reg, "interp", b, "OtherComp").component_gen.name == "OtherComp"
    assert plan_codes(reg, "interp", b, "TextCompGen") == ["X009"]


def test_entrypoint_must_match_root(corpus, registry, pool):
    models = [m for m in registry.models if m.name != "InterpCompGen"]
    other = gen("Narrow", "component", platform="interp", rts="interp-rts-1", entrypoint="SomethingElse")
    reg = build_registry(models + [other], pool)
    assert plan_codes(reg, "interp", bound(corpus, "sim.bind")) == ["X001"]


def test_missing_behavior_generator(corpus, registry):
    with pytest.raises(DiagnosticError) as info:
        compose_plan(registry.without("InterpActivityGen"), "interp", bound(corpus, "sim.bind"))
    [d] = info.value.diagnostics
    assert d.code == "X003" and d.data == ("activity", "interp-rts-1")


def test_ambiguous_behavior_generator(corpus, registry, pool):
    twin = gen("Twin", "behavior", language="automaton", rts="interp-rts-1")
    reg = build_registry(list(registry.models) + [twin], pool)
    assert plan_codes(reg, "interp", bound(corpus, "sim.bind")) == ["X004"]


def test_type_generator_errors(corpus, registry, pool):
    assert plan_codes(registry.without("InterpTypeGen"), "interp", bound(corpus, "sim.bind")) == ["X005"]
    twin = gen("TypeTwin", "type", platform="interp")
    reg = build_registry(list(registry.models) + [twin], pool)
    assert plan_codes(reg, "interp", bound(corpus, "sim.bind")) == ["X006"]


def test_extern_cannot_be_simulated(corpus, registry):
    lejos = bound(corpus, "lejos.bind")
    as_interp = BoundArchitecture(lejos.architecture, "interp", lejos.resolved_impls, lejos.binding)
    codes = plan_codes(registry, "interp", as_interp)
    assert set(codes) == {"X008"} and len(codes) == 4


# ---------------------------------------------------------------- emission

def test_textgen_files(corpus, registry, tmp_path):
    b = bound(corpus, "lejos.bind")
    artifacts = run_generation(compose_plan(registry, "textgen", b), b, tmp_path / "out", registry)
    assert artifacts.paths == TEXTGEN_FILES
    written = sorted(p.relative_to(tmp_path / "out").as_posix() for p in (tmp_path / "out").rglob("*") if p.is_file())
    assert written == sorted(TEXTGEN_FILES)
    motor = (tmp_path / "out/components/Motor.gen.txt").read_text()
    assert 'extern impl "lejos/MotorImpl"' in motor
    types = (tmp_path / "out/types/ExplorerTypes.gen.txt").read_text()
    assert "enum NavigationCommand: FORWARD, BACKWARD, TURN_LEFT, TURN_RIGHT, STOP" in types
    main = (tmp_path / "out/main.gen.txt").read_text()
    assert "link timer.done -> explorationControl/logger.flush" in main


def test_textgen_component_hull(corpus, registry, tmp_path):
    b = bound(corpus, "lejos.bind")
    run_generation(compose_plan(registry, "textgen", b), b, tmp_path, registry)
    ec = (tmp_path / "components/ExplorationControl.gen.txt").read_text()
    assert "schedule controller, logger" in ec


def test_interp_manifest_matches_flattening(corpus, registry):
    b = bound(corpus, "sim.bind")
    doc = emit_interp_manifest(compose_plan(registry, "interp", b), b)
    net = flatten_architecture(corpus.architecture)
    assert [i["path"] for i in doc["instances"]] == net.paths
    assert [(l["from"], l["to"]) for l in doc["links"]] == [(l.source_name, l.target_name) for l in net.links]
    assert doc["schedules"] == {
        "": ["button", "timer", "ultraSonic", "explorationControl", "navigation"],
        "explorationControl": ["controller", "logger"],
        "navigation": ["translator", "leftMotor", "rightMotor"],
    }
    assert doc["dataModel"]["enums"] == {"NavigationCommand": ["FORWARD", "BACKWARD", "TURN_LEFT", "TURN_RIGHT",
                                                               "STOP"]}
    timer = next(i for i in doc["instances"] if i["path"] == "timer")
    assert timer["params"] == {"limit": 3} and timer["vars"] == {"ticks": 0}
    assert timer["behavior"]["language"] == "activity"
    button = next(i for i in doc["instances"] if i["path"] == "button")
    assert button["stub"].endswith("traces/button.csv") and "behavior" not in button


def test_manifest_stub_paths_are_relative_to_output(corpus, registry, tmp_path):
    b = bound(corpus, "sim.bind")
    out = tmp_path / "deep" / "out"
    run_generation(compose_plan(registry, "interp", b), b, out, registry)
    doc = json.loads((out / "manifest.json").read_text())
    for inst in doc["instances"]:
        if "stub" in inst:
            assert not Path(inst["stub"]).is_absolute()
            assert (out / inst["stub"]).resolve().is_file()


def test_schedule_of_default_is_least_topological(corpus):
    assert schedule_of(corpus.architecture.component("Navigation")) == ["translator", "leftMotor", "rightMotor"]
    assert schedule_of(corpus.architecture.component("ExplorationControl")) == ["controller", "logger"]


def test_atomic_root_manifest(registry):
    arch = load_sources([("A.arc", "component A {\n  port out Int o;\n"
                                   "  automaton { states S; initial S; S -> S / o = 1; }\n}\n")], "A").architecture
    b = BoundArchitecture(arch, "interp", {})
    doc = emit_interp_manifest(compose_plan(registry, "interp", b), b)
    assert doc["schedules"] == {} and doc["links"] == []
    assert [i["path"] for i in doc["instances"]] == [""]
    assert doc["boundaryPorts"] == [{"name": "o", "direction": "out", "type": "Int"}]


def test_failed_gate_writes_nothing(registry, tmp_path):
    arch = load_sources([("A.arc", "component A {\n  port in Int x;\n  port out Int o;\n"
                                   "  automaton { states S; initial S; S -> S [x < 10] / o = 1; "
                                   "S -> S [x > 5] / o = 2; }\n}\n")], "A").architecture
    b = BoundArchitecture(arch, "interp", {})
    out = tmp_path / "out"
    with pytest.raises(GenerationAborted) as info:
        run_generation(compose_plan(registry, "interp", b), b, out, registry)
    assert info.value.report.failed_rules() == ["G001"]
    assert not out.exists()
    assert list(tmp_path.iterdir()) == []


def test_rerun_overwrites_in_place(corpus, registry, tmp_path):
    b = bound(corpus, "sim.bind")
    plan = compose_plan(registry, "interp", b)
    run_generation(plan, b, tmp_path / "out", registry)
    first = (tmp_path / "out/manifest.json").read_bytes()
    run_generation(plan, b, tmp_path / "out", registry)
    assert (tmp_path / "out/manifest.json").read_bytes() == first
    assert sorted(p.name for p in tmp_path.iterdir()) == ["out"]


@pytest.mark.parametrize("files", [
    ((("a", b""), ("a", b"")),),
    ((("/abs", b""),),),
    ((("../up", b""),),),
])
def test_artifact_paths_validated(files):
    with pytest.raises(ValueError):
        ArtifactSet(*files)
