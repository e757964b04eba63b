"""Recursive-descent parsers for .arc, .types, .bind and .gen files.

Each parser returns a model or raises ``DiagnosticError``.
"""

from __future__ import annotations

from pathlib import Path
from typing import Optional

from arcc import diagnostics as dg
from arcc.binding import EXTERN, STUB, BindingModel, ImplRef
from arcc.diagnostics import DiagnosticError, error
from arcc.frontend.languages import SCHEDULED, BehaviorRegistry, LanguageProfile, default_registry
from arcc.frontend.stream import TokenStream
from arcc.genfw.model import FIELD_RULES, KINDS, GeneratorModel
from arcc.model import (PRIMITIVES, BehaviorAttachment, ComponentType, ConfigParam, Connector, DataModel,
                        EnumDecl, PortDecl, PortRef, RecordDecl, RecordField, SubcomponentInstance, Variable)


def parse_architecture(
    source: str,
    profile: LanguageProfile = SCHEDULED,
    registry: Optional[BehaviorRegistry] = None,
    file: str = "<input>",
) -> ComponentType:
    registry = default_registry() if registry is None else registry
    ts = TokenStream(source, file)
    head = ts.expect("component")
    name = ts.expect_id("component name")
    type_params: list[str] = []
    if ts.accept("<"):
        type_params.append(ts.expect_id("type parameter").value)
        while ts.accept(","):
            type_params.append(ts.expect_id("type parameter").value)
        ts.expect(">")
    config_params: list[ConfigParam] = []
    if ts.accept("("):
        while True:
            t = ts.parse_type()
            pname = ts.expect_id("parameter name")
            config_params.append(ConfigParam(t, pname.value, pname.loc))
            if not ts.accept(","):
                break
        ts.expect(")")
    ts.expect("{")

    ports, variables, subs, connectors, behaviors = [], [], [], [], []
    schedule = schedule_loc = None
    while not ts.at("}"):
        tok = ts.peek()
        if tok.kind != "ID":
            ts.fail(f"expected component element but found {tok}")
        if ts.accept("port"):
            while True:
                direction = ts.next()
                if direction.value not in ("in", "out") or direction.kind != "ID":
                    ts.fail(f"expected 'in' or 'out' but found {direction}", direction.loc)
                t = ts.parse_type()
                pname = ts.expect_id("port name")
                ports.append(PortDecl(pname.value, direction.value, t, pname.loc))
                if not ts.accept(","):
                    break
            ts.expect(";")
        elif ts.accept("var"):
            t = ts.parse_type()
            vname = ts.expect_id("variable name")
            initial = ts.parse_literal() if ts.accept("=") else None
            ts.expect(";")
            variables.append(Variable(vname.value, t, initial, vname.loc))
        elif ts.accept("instance"):
            t = ts.parse_type()
            iname = ts.expect_id("instance name")
            args = []
            if ts.accept("("):
                args.append(ts.parse_literal())
                while ts.accept(","):
                    args.append(ts.parse_literal())
                ts.expect(")")
            ts.expect(";")
            subs.append(SubcomponentInstance(iname.value, t, tuple(args), iname.loc))
        elif ts.accept("connect"):
            source = _port_ref(ts)
            ts.expect("->")
            targets = [_port_ref(ts)]
            while ts.accept(","):
                targets.append(_port_ref(ts))
            delayed = ts.accept("delayed")
            ts.expect(";")
            connectors.append(Connector(source, tuple(targets), delayed, tok.loc))
        elif tok.value == "schedule":
            if not profile.accepts("schedule"):
                raise DiagnosticError([error(
                    dg.PROFILE_VIOLATION, "schedule requires profile=scheduled", tok.loc, "schedule")])
            ts.next()
            if schedule is not None:
                ts.fail("duplicate schedule element", tok.loc)
            names = [ts.expect_id("instance name").value]
            while ts.accept(","):
                names.append(ts.expect_id("instance name").value)
            ts.expect(";")
            schedule, schedule_loc = tuple(names), tok.loc
        elif ts.at("{", 1):
            lang = registry.by_keyword(tok.value)
            if lang is None:
                raise DiagnosticError([error(
                    dg.UNKNOWN_BEHAVIOR_KEYWORD, f"unknown behavior keyword '{tok.value}'", tok.loc, tok.value)])
            ts.next()
            ts.expect("{")
            model = lang.parse_body(ts)
            ts.expect("}")
            behaviors.append(BehaviorAttachment(lang.language_id, model, tok.loc))
        else:
            ts.fail(f"unknown component element '{tok.value}'")
    ts.expect("}")
    ts.expect_eof()

    comp = ComponentType(
        name.value, tuple(type_params), tuple(config_params), tuple(ports), tuple(variables),
        tuple(subs), tuple(connectors), tuple(behaviors), schedule, head.loc, schedule_loc)
    if file.endswith(".arc") and Path(file).stem != comp.name:
        raise DiagnosticError([error(
            dg.FILE_NAME_MISMATCH, f"file '{Path(file).name}' must be named '{comp.name}.arc'", name.loc)])
    return comp


def _port_ref(ts: TokenStream) -> PortRef:
    first = ts.expect_id("port reference")
    if ts.accept("."):
        port = ts.expect_id("port name")
        return PortRef(first.value, port.value, first.loc)
    return PortRef(None, first.value, first.loc)


def parse_data_model(source: str, file: str = "<input>") -> DataModel:
    ts = TokenStream(source, file)
    head = ts.expect("types")
    name = ts.expect_id("data model name")
    ts.expect("{")
    enums, records, diags = [], [], []
    seen = set(PRIMITIVES)
    while not ts.at("}"):
        if ts.accept("enum"):
            ename = ts.expect_id("enum name")
            ts.expect("{")
            first = ts.peek()
            if first.kind != "ID":
                ts.fail("enum requires at least one literal")
            literals = [ts.next().value]
            while ts.accept(","):
                literals.append(ts.expect_id("enum literal").value)
            ts.expect(";")
            ts.expect("}")
            dupes = sorted({l for l in literals if literals.count(l) > 1})
            if dupes:
                diags.append(error(dg.DUPLICATE_TYPE_NAME,
                                   f"enum {ename.value} repeats literal(s) {', '.join(dupes)}", ename.loc))
            decl_name, decl = ename, EnumDecl(ename.value, tuple(literals), ename.loc)
            enums.append(decl)
        elif ts.accept("record"):
            rname = ts.expect_id("record name")
            ts.expect("{")
            fields = []
            while not ts.at("}"):
                t = ts.parse_type()
                fname = ts.expect_id("field name")
                ts.expect(";")
                if any(f.name == fname.value for f in fields):
                    diags.append(error(dg.DUPLICATE_TYPE_NAME,
                                       f"record {rname.value} repeats field '{fname.value}'", fname.loc))
                fields.append(RecordField(fname.value, t, fname.loc))
            ts.expect("}")
            decl_name, decl = rname, RecordDecl(rname.value, tuple(fields), rname.loc)
            records.append(decl)
        else:
            ts.fail(f"expected 'enum' or 'record' but found {ts.peek()}")
        if decl_name.value in seen:
            diags.append(error(dg.DUPLICATE_TYPE_NAME, f"duplicate type name '{decl_name.value}'",
                               decl_name.loc, decl_name.value))
        seen.add(decl_name.value)
    ts.expect("}")
    ts.expect_eof()
    if diags:
        raise DiagnosticError(diags)
    return DataModel(name.value, tuple(enums), tuple(records), head.loc)


def parse_binding(source: str, file: str = "<input>") -> BindingModel:
    ts = TokenStream(source, file)
    head = ts.expect("binding")
    name = ts.expect_id("binding name").value
    ts.expect("for")
    root = ts.expect_id("root component").value
    ts.expect("platform")
    platform = ts.expect_id("platform id").value
    ts.expect("{")
    entries: dict[str, ImplRef] = {}
    diags = []
    while not ts.at("}"):
        ts.expect("bind")
        target = ts.expect_id("component type")
        ts.expect("->")
        kind = ts.next()
        if kind.value not in (STUB, EXTERN) or kind.kind != "ID":
            ts.fail(f"expected 'stub' or 'extern' but found {kind}", kind.loc)
        locator = ts.expect_string()
        ts.expect(";")
        ref = ImplRef(kind.value, locator.value, target.loc)
        if kind.value == STUB and not locator.value.endswith(".csv"):
            diags.append(error(dg.BAD_LOCATOR, f"stub locator '{locator.value}' must name a .csv file", locator.loc))
        if kind.value == EXTERN and not locator.value:
            diags.append(error(dg.BAD_LOCATOR, "extern locator must not be empty", locator.loc))
        if target.value in entries:
            diags.append(error(dg.DUPLICATE_BINDING, f"duplicate binding for '{target.value}'",
                               target.loc, target.value))
            continue
        entries[target.value] = ref
    ts.expect("}")
    ts.expect_eof()
    if diags:
        raise DiagnosticError(diags)
    base = Path(file).parent if file != "<input>" else None
    return BindingModel(name, root, platform, entries, head.loc, base)


def parse_generator_model(source: str, file: str = "<input>") -> GeneratorModel:
    ts = TokenStream(source, file)
    head = ts.expect("generator")
    name = ts.expect_id("generator name")
    ts.expect("{")
    ts.expect("kind")
    kind_tok = ts.expect_id("generator kind")
    if kind_tok.value not in KINDS:
        ts.fail(f"generator kind must be one of {', '.join(KINDS)}", kind_tok.loc)
    kind = kind_tok.value
    ts.expect(";")
    values: dict[str, object] = {}
    diags = []
    while not ts.at("}"):
        field_tok = ts.expect_id("generator field")
        key = field_tok.value
        if key in ("platform", "language"):
            value = ts.expect_id(f"{key} id").value
        elif key == "rts":
            value = ts.expect_string().value
        elif key == "entrypoint":
            value = "*" if ts.accept("*") else ts.expect_id("entry point").value
        elif key == "requires":
            items = [ts.expect_id("check id").value]
            while ts.accept(","):
                items.append(ts.expect_id("check id").value)
            value = tuple(items)
        else:
            ts.fail(f"unknown generator field '{key}'", field_tok.loc)
        ts.expect(";")
        if key in values:
            diags.append(error(dg.GENERATOR_FIELD, f"duplicate field '{key}'", field_tok.loc, key))
        elif key != "requires" and not FIELD_RULES[kind][key]:
            diags.append(error(dg.GENERATOR_FIELD, f"'{key}' is invalid for kind {kind}", field_tok.loc, key, kind))
        values[key] = value
    close = ts.expect("}")
    ts.expect_eof()
    for key, required in FIELD_RULES[kind].items():
        if required and key not in values:
            diags.append(error(dg.GENERATOR_FIELD, f"kind {kind} requires field '{key}'", close.loc, key, kind))
    if diags:
        raise DiagnosticError(diags)
    return GeneratorModel(name.value, kind, values.get("platform"), values.get("language"), values.get("rts"),
                          values.get("entrypoint"), values.get("requires", ()), head.loc)
