"""Shared helpers for the test suite: corpus access and random model generators."""

from __future__ import annotations

import random
from pathlib import Path

from arcc.binding import BoundArchitecture
from arcc.frontend.languages import SCHEDULED
from arcc.frontend.project import Project, load_project, load_sources

ROOT = Path(__file__).resolve().parents[1]
CORPUS = ROOT / "corpus"
FIXTURES = Path(__file__).resolve().parent / "fixtures"
GENERATORS = CORPUS / "generators"

COMPONENT_TYPES = ("Button", "Controller", "ExplorationControl", "ExplorerBot", "Logger", "Motor", "Navigation",
                   "Timer", "Translator", "UltraSonic")


def corpus_model_files() -> list[Path]:
    return sorted(CORPUS.glob("*.arc")) + sorted(CORPUS.glob("*.types"))


def corpus_sources(**replace: str) -> list[tuple[str, str]]:
    """Corpus model sources; ``replace`` maps a file name to substitute text."""
    return [(str(p), replace.get(p.name, p.read_text())) for p in corpus_model_files()]


def load_corpus(profile=SCHEDULED, registry=None, **replace: str) -> Project:
    if replace:
        return load_sources(corpus_sources(**replace), "ExplorerBot", profile, registry)
    return load_project(corpus_model_files(), "ExplorerBot", profile, registry)


def corpus_text(name: str) -> str:
    return (CORPUS / name).read_text()


def unbound(arch, platform: str = "interp") -> BoundArchitecture:
    return BoundArchitecture(arch, platform, {})


# ---------------------------------------------------------------- random DAG architectures


def random_dag(rng: random.Random, max_nodes: int = 6):
    """(names, instant edges, delayed edges); instant edges follow a hidden topological order."""
    n = rng.randint(2, max_nodes)
    names = [f"n{i}" for i in range(n)]
    hidden = names[:]
    rng.shuffle(hidden)
    instant, delayed = set(), set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.4:
                instant.add((hidden[i], hidden[j]))
            elif rng.random() < 0.1:
                delayed.add((hidden[j], hidden[i]))
    return names, sorted(instant), sorted(delayed)


def dag_architecture_sources(rng: random.Random, names, instant, delayed):
    """Sources of a root ``R`` wiring one deterministic atomic type per node."""
    incoming = {n: [] for n in names}
    for a, b in instant + delayed:
        incoming[b].append(a)
    files = []
    for n in names:
        ins = ", ".join(["in Int ext"] + [f"in Int p{k}" for k in range(len(incoming[n]))])
        k = rng.randint(-5, 5)
        total = " + ".join([f"p{k2}" for k2 in range(len(incoming[n]))] + ["acc"])
        step = rng.choice([1, 2, 3])
        files.append((f"T{n}.arc", f"""component T{n} {{
  port {ins};
  port out Int o;
  var Int acc = 0;
  automaton {{
    states A B;
    initial A;
    A -> B [present(ext) && ext > {k}] / o = acc + {step}, acc = acc + {step};
    A -> A [!(present(ext) && ext > {k})] / o = acc;
    B -> A / o = {total}, acc = acc - 1;
  }}
}}
"""))
    lines = ["component R {", "  port in Int ext;", "  port out Int out;"]
    lines += [f"  instance T{n} {n};" for n in names]
    lines += [f"  connect ext -> {', '.join(f'{n}.ext' for n in names)};"]
    slot = {n: 0 for n in names}
    for a, b in instant + delayed:
        suffix = " delayed" if (a, b) in delayed else ""
        lines.append(f"  connect {a}.o -> {b}.p{slot[b]}{suffix};")
        slot[b] += 1
    lines.append(f"  connect {names[-1]}.o -> out;")
    lines.append("}")
    files.append(("R.arc", "\n".join(lines) + "\n"))
    return files


def linear_extension(rng: random.Random, names, edges) -> list[str]:
    """A uniformly-ish random topological order of ``names`` under ``edges``."""
    indegree = {n: 0 for n in names}
    for _, b in edges:
        indegree[b] += 1
    ready = [n for n in names if indegree[n] == 0]
    order = []
    while ready:
        n = ready.pop(rng.randrange(len(ready)))
        order.append(n)
        for a, b in edges:
            if a == n:
                indegree[b] -= 1
                if indegree[b] == 0:
                    ready.append(b)
    return order


# ---------------------------------------------------------------- random automata

ENUM_LITERALS = ("RED", "GREEN", "BLUE")
RANDOM_AUTOMATON_TYPES = ("types Palette {\n  enum Color { RED, GREEN, BLUE; }\n}\n")


def _random_atom(rng: random.Random) -> str:
    choice = rng.randrange(7)
    c = rng.randint(-4, 12)
    op = rng.choice(["<", "<=", ">", ">=", "==", "!="])
    if choice == 0:
        return f"x {op} {c}"
    if choice == 1:
        return f"{2 * rng.choice([1, -1])} * y {op} {c}"
    if choice == 2:
        return rng.choice(["b", "!b", "b == true", "b == false"])
    if choice == 3:
        return f"col {rng.choice(['==', '!='])} {rng.choice(ENUM_LITERALS)}"
    if choice == 4:
        return f"present({rng.choice(['x', 'y', 'b', 'col'])})"
    if choice == 5:
        return f"v {op} {c}"
    return f"x + 1 {op} {c}"


def random_guard(rng: random.Random, depth: int = 0) -> str:
    if depth >= 2 or rng.random() < 0.5:
        return _random_atom(rng)
    op = rng.choice(["&&", "||"])
    left, right = random_guard(rng, depth + 1), random_guard(rng, depth + 1)
    text = f"({left}) {op} ({right})"
    return f"!({text})" if rng.random() < 0.2 else text


def random_automaton_source(rng: random.Random, name: str = "Auto") -> str:
    states = ["S0", "S1"][: rng.randint(1, 2)]
    lines = [f"component {name} {{", "  port in Int x, in Int y, in Bool b, in Color col;", "  port out Int o;",
             "  var Int v = 0;", "  automaton {", f"    states {' '.join(states)};", "    initial S0;"]
    for s in states:
        for _ in range(rng.randint(1, 3)):
            target = rng.choice(states)
            guard = "" if rng.random() < 0.05 else f" [{random_guard(rng)}]"
            lines.append(f"    {s} -> {target}{guard} / o = {rng.randint(0, 9)}, v = v + 1;")
    lines += ["  }", "}"]
    return "\n".join(lines) + "\n"


def random_concrete_env(rng: random.Random) -> dict:
    from arcc.values import EnumValue

    def maybe(value):
        return None if rng.random() < 0.15 else value

    return {
        "x": maybe(rng.randint(-20, 25)),
        "y": maybe(rng.randint(-20, 25)),
        "b": maybe(rng.random() < 0.5),
        "col": maybe(EnumValue("Color", rng.choice(ENUM_LITERALS))),
        "v": rng.randint(-20, 25),
    }
