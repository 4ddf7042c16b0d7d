"""Canonical byte encoding of behavior programs and catalogs.

The encoding is canonical JSON (sorted keys, compact separators, UTF-8), so
two serializations of equal programs are byte-identical and stored copies can
be compared against fresh compiles. See docs/program-format.md.
"""

from __future__ import annotations

import json
from datetime import timedelta

from ..durations import format_duration, parse_duration
from ..errors import DecodeError
from ..passmodel import BusinessField, StateKind
from .program import (
    BehaviorProgram,
    CatalogEntry,
    CompiledState,
    FormField,
    InteractionEffect,
    MessageCatalog,
    SendEffect,
    Trigger,
    TriggerKind,
)

FORMAT_PROGRAM = "passflow-program/1"
FORMAT_CATALOG = "passflow-catalog/1"


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode(
        "utf-8"
    )


def serialize_program(program: BehaviorProgram) -> bytes:
    states = {}
    for sid, state in program.states.items():
        entry = {
            "label": state.label,
            "kind": state.kind.value,
            "end": state.is_end,
            "triggers": [
                {
                    "kind": t.kind.value,
                    "target": t.target_state_id,
                    "match": t.match,
                    **(
                        {"duration": format_duration(t.duration)}
                        if t.duration is not None
                        else {}
                    ),
                }
                for t in state.triggers
            ],
        }
        if isinstance(state.on_enter, SendEffect):
            entry["send"] = {
                "exchange": state.on_enter.exchange_id,
                "to": state.on_enter.recipient_subject,
                "payload": dict(state.on_enter.payload_template),
            }
        elif isinstance(state.on_enter, InteractionEffect):
            entry["interaction"] = {
                "fields": [
                    {
                        "name": f.name,
                        "displayName": f.display_name,
                        "fieldType": f.field_type,
                        "readOnly": f.read_only,
                    }
                    for f in state.on_enter.fields
                ],
                "choices": list(state.on_enter.choices),
            }
        states[sid] = entry
    return _canonical(
        {
            "format": FORMAT_PROGRAM,
            "subject": program.subject_id,
            "subjectLabel": program.subject_label,
            "model": program.model_name,
            "initialState": program.initial_state_id,
            "startSubject": program.is_start_subject,
            "targetSystem": program.target_system,
            "states": states,
        }
    )


def deserialize_program(data: bytes) -> BehaviorProgram:
    doc = _load(data, FORMAT_PROGRAM)
    try:
        program = BehaviorProgram(
            subject_id=doc["subject"],
            subject_label=doc["subjectLabel"],
            model_name=doc["model"],
            initial_state_id=doc["initialState"],
            is_start_subject=doc["startSubject"],
            target_system=doc["targetSystem"],
        )
        for sid, entry in doc["states"].items():
            state = CompiledState(
                state_id=sid,
                label=entry["label"],
                kind=StateKind(entry["kind"]),
                is_end=entry["end"],
            )
            for t in entry["triggers"]:
                duration = (
                    parse_duration(t["duration"]) if "duration" in t else None
                )
                state.triggers.append(
                    Trigger(
                        kind=TriggerKind(t["kind"]),
                        target_state_id=t["target"],
                        match=t["match"],
                        duration=duration,
                    )
                )
            if "send" in entry:
                state.on_enter = SendEffect(
                    exchange_id=entry["send"]["exchange"],
                    recipient_subject=entry["send"]["to"],
                    payload_template=tuple(sorted(entry["send"]["payload"].items())),
                )
            elif "interaction" in entry:
                state.on_enter = InteractionEffect(
                    fields=tuple(
                        FormField(
                            name=f["name"],
                            display_name=f["displayName"],
                            field_type=f["fieldType"],
                            read_only=f["readOnly"],
                        )
                        for f in entry["interaction"]["fields"]
                    ),
                    choices=tuple(entry["interaction"]["choices"]),
                )
            program.states[sid] = state
        return program
    except (KeyError, TypeError, ValueError) as exc:
        raise DecodeError(f"malformed program document: {exc}") from exc


def serialize_catalog(catalog: MessageCatalog) -> bytes:
    return _canonical(
        {
            "format": FORMAT_CATALOG,
            "exchanges": {
                eid: {
                    "label": e.spec_label,
                    "sender": e.sender,
                    "receiver": e.receiver,
                    "fields": [
                        {
                            "name": f.name,
                            "displayName": f.display_name,
                            "fieldType": f.field_type,
                        }
                        for f in e.payload_fields
                    ],
                }
                for eid, e in catalog.entries.items()
            },
        }
    )


def deserialize_catalog(data: bytes) -> MessageCatalog:
    doc = _load(data, FORMAT_CATALOG)
    try:
        catalog = MessageCatalog()
        for eid, e in doc["exchanges"].items():
            catalog.entries[eid] = CatalogEntry(
                spec_label=e["label"],
                sender=e["sender"],
                receiver=e["receiver"],
                payload_fields=tuple(
                    BusinessField(
                        name=f["name"],
                        display_name=f["displayName"],
                        field_type=f["fieldType"],
                    )
                    for f in e["fields"]
                ),
            )
        return catalog
    except (KeyError, TypeError, ValueError) as exc:
        raise DecodeError(f"malformed catalog document: {exc}") from exc


def _load(data: bytes, expected_format: str) -> dict:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise DecodeError(f"not a canonical JSON document: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("format") != expected_format:
        raise DecodeError(
            f"unexpected document format {doc.get('format') if isinstance(doc, dict) else type(doc)!r}"
        )
    return doc


def dump_program(program: BehaviorProgram) -> str:
    """Line-oriented, diff-friendly rendering of a program."""
    lines = [
        f"program subject={program.subject_id} label={program.subject_label!r} "
        f"model={program.model_name!r} system={program.target_system} "
        f"start={'yes' if program.is_start_subject else 'no'}"
    ]
    for sid, state in program.states.items():
        flags = []
        if sid == program.initial_state_id:
            flags.append("initial")
        if state.is_end:
            flags.append("end")
        suffix = f" [{','.join(flags)}]" if flags else ""
        lines.append(f"state {sid} kind={state.kind.value} label={state.label!r}{suffix}")
        if isinstance(state.on_enter, SendEffect):
            lines.append(
                f"  enter send exchange={state.on_enter.exchange_id} "
                f"to={state.on_enter.recipient_subject}"
            )
        elif isinstance(state.on_enter, InteractionEffect):
            fields = ",".join(f.name for f in state.on_enter.fields) or "-"
            choices = ",".join(state.on_enter.choices) or "-"
            lines.append(f"  enter interaction fields={fields} choices={choices}")
        elif state.is_end:
            lines.append("  enter exit")
        for t in state.triggers:
            lines.append(f"  {t.kind.value} match={t.match!r} -> {t.target_state_id}")
    return "\n".join(lines) + "\n"
