"""Command-line entry point: check, bind, generate, simulate and generators list."""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path
from typing import Iterable, Optional, Sequence

from arcc.behaviors.evaluate import RuntimeEvalError
from arcc.binding import apply_binding, validate_binding
from arcc.checks.pool import build_pool, check_architecture
from arcc.diagnostics import Diagnostic, DiagnosticError, has_errors
from arcc.frontend.languages import PROFILES
from arcc.frontend.parser import parse_binding
from arcc.frontend.project import Project, load_project
from arcc.genfw.plan import compose_plan
from arcc.genfw.registry import load_generator_registry
from arcc.genfw.run import run_generation
from arcc.simulator.engine import ScheduleViolation, simulate
from arcc.simulator.manifest import load_manifest
from arcc.simulator.stub import load_stub_trace

EXIT_OK, EXIT_ERRORS, EXIT_USAGE = 0, 1, 2


def _report(diags: Iterable[Diagnostic]) -> None:
    for d in diags:
        print(d.format(), file=sys.stderr)


def _model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("files", nargs="+", metavar="FILE", help=".arc and .types files")
    p.add_argument("--root", required=True, metavar="ID", help="root component type")
    p.add_argument("--profile", choices=sorted(PROFILES), default="scheduled")
    p.add_argument("--lib", action="append", default=[], metavar="DIR", help="model library directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arcc", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    check = sub.add_parser("check", help="parse and check well-formedness")
    _model_args(check)

    bind = sub.add_parser("bind", help="validate a binding against an architecture")
    _model_args(bind)
    bind.add_argument("--binding", required=True, metavar="FILE")

    gen = sub.add_parser("generate", help="bind, compose a generator plan and generate")
    _model_args(gen)
    gen.add_argument("--binding", required=True, metavar="FILE")
    gen.add_argument("--generators", required=True, metavar="DIR")
    gen.add_argument("--platform", required=True, metavar="ID")
    gen.add_argument("--component-generator", metavar="NAME")
    gen.add_argument("-o", "--out", required=True, metavar="DIR")

    sim = sub.add_parser("simulate", help="run a generated manifest")
    sim.add_argument("manifest", metavar="MANIFEST")
    sim.add_argument("--ticks", required=True, type=_non_negative, metavar="N")
    sim.add_argument("--trace", metavar="FILE", help="trace CSV output (default: standard output)")
    sim.add_argument("--inputs", metavar="CSV", help="values for the root's boundary in-ports")

    gens = sub.add_parser("generators", help="inspect a generator registry")
    gens_sub = gens.add_subparsers(dest="action", metavar="ACTION")
    gens_sub.required = True
    listing = gens_sub.add_parser("list", help="print the registry as a table")
    listing.add_argument("--generators", required=True, metavar="DIR")
    return parser


def _non_negative(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid tick count {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("tick count must be non-negative")
    return value


def _load(args) -> Project:
    profile = PROFILES[args.profile]
    project = load_project(args.files, args.root, profile, lib_dirs=args.lib)
    report = check_architecture(project.architecture, profile=profile)
    _report(report.diagnostics)
    if not report.passed:
        raise _Failed()
    return project


class _Failed(Exception):
    """Diagnostics were already reported."""


def _bound(args, project: Project):
    binding = parse_binding(Path(args.binding).read_text(encoding="utf-8"), args.binding)
    diags = validate_binding(project.architecture, binding)
    _report(diags)
    if has_errors(diags):
        raise _Failed()
    return apply_binding(project.architecture, binding)


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=".arcc-", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def cmd_check(args) -> int:
    _load(args)
    return EXIT_OK


def cmd_bind(args) -> int:
    bound = _bound(args, _load(args))
    for name, ref in sorted(bound.resolved_impls.items()):
        print(f"{name} -> {ref}")
    return EXIT_OK


def cmd_generate(args) -> int:
    project = _load(args)
    bound = _bound(args, project)
    pool = build_pool(profile=PROFILES[args.profile])
    registry = load_generator_registry(args.generators, pool)
    plan = compose_plan(registry, args.platform, bound, args.component_generator)
    artifacts = run_generation(plan, bound, args.out, registry, pool)
    for rel in artifacts.paths:
        print(rel)
    return EXIT_OK


def cmd_simulate(args) -> int:
    manifest = load_manifest(args.manifest)
    inputs = None
    if args.inputs:
        ports = [(p.name, p.type) for p in manifest.boundary_ports if p.direction == "in"]
        inputs = load_stub_trace(args.inputs, ports, manifest.enums)
    try:
        trace = simulate(manifest, args.ticks, inputs)
    except RuntimeEvalError as exc:
        where = f"tick {getattr(exc, 'tick', '?')}, instance '{getattr(exc, 'instance', '?')}'"
        print(f"{args.manifest}: error: {where}: {exc}", file=sys.stderr)
        return EXIT_ERRORS
    except ScheduleViolation as exc:
        print(f"{args.manifest}: error: {exc}", file=sys.stderr)
        return EXIT_ERRORS
    text = trace.to_csv()
    if args.trace:
        _atomic_write(Path(args.trace), text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def generators_table(registry) -> str:
    header = ("NAME", "KIND", "PLATFORM", "LANGUAGE", "RTS", "CHECKS")
    rows = [header] + [(m.name, m.kind, m.platform or "-", m.language or "-", m.rts or "-",
                        ",".join(m.requires) or "-") for m in registry.models]
    widths = [max(len(r[i]) for r in rows) for i in range(len(header) - 1)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(r, widths)) + "  " + r[-1] for r in rows]
    return "\n".join(lines) + "\n"


def cmd_generators(args) -> int:
    registry = load_generator_registry(args.generators, build_pool())
    sys.stdout.write(generators_table(registry))
    return EXIT_OK


COMMANDS = {"check": cmd_check, "bind": cmd_bind, "generate": cmd_generate, "simulate": cmd_simulate,
            "generators": cmd_generators}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except _Failed:
        return EXIT_ERRORS
    except DiagnosticError as exc:
        _report(exc.diagnostics)
        return EXIT_ERRORS
    except OSError as exc:
        print(f"arcc: error: {exc}", file=sys.stderr)
        return EXIT_ERRORS


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
