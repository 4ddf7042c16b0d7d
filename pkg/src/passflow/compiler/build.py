"""Compile validated PASS models into behavior programs plus a message catalog."""

from __future__ import annotations

from collections import deque
from typing import Mapping

from ..durations import format_duration
from ..errors import CompileError, UnsupportedConstruct
from ..passmodel import (
    PassModel,
    StateKind,
    SubjectBehavior,
    TransitionKind,
    validate_pass,
)
from .program import (
    BehaviorProgram,
    CatalogEntry,
    CompiledModel,
    CompiledState,
    FormField,
    InteractionEffect,
    MessageCatalog,
    SendEffect,
    Trigger,
    TriggerKind,
)


def compile_model(
    model: PassModel,
    *,
    target_systems: Mapping[str, str] | None = None,
    default_system: str = "server",
) -> CompiledModel:
    """Build one interpretable program per subject.

    ``target_systems`` optionally places individual subjects on named actor
    systems (multi-company deployments); everything else runs on
    ``default_system``.
    """
    report = validate_pass(model)
    if not report.ok:
        details = "; ".join(f"{f.component_id}: {f.message}" for f in report.errors)
        raise CompileError(f"model fails validation: {details}")

    catalog = MessageCatalog()
    for exchange in model.message_exchanges:
        spec = model.spec_by_id(exchange.message_spec)
        catalog.entries[exchange.component_id] = CatalogEntry(
            spec_label=spec.component_label,
            sender=exchange.sender,
            receiver=exchange.receiver,
            payload_fields=tuple(spec.payload_fields),
        )

    programs: dict[str, BehaviorProgram] = {}
    for subject in model.subjects:
        behavior = model.behaviors[subject.component_id]
        program = BehaviorProgram(
            subject_id=subject.component_id,
            subject_label=subject.component_label,
            model_name=model.name,
            initial_state_id=behavior.initial_state_id,
            is_start_subject=subject.is_start_subject,
            target_system=(target_systems or {}).get(
                subject.component_id, default_system
            ),
        )
        subject_fields = _subject_fields(model, subject.component_id)
        for state in behavior.states:
            program.states[state.component_id] = _compile_state(
                model, subject.component_id, behavior, state, subject_fields
            )
        _check_reachability(program, subject.component_id)
        programs[subject.component_id] = program
    return CompiledModel(model_name=model.name, programs=programs, catalog=catalog)


def _subject_fields(model: PassModel, subject_id: str) -> tuple[FormField, ...]:
    """The business fields flowing through a subject, in catalog order.

    Do-state forms edit these; the local store is keyed by field name.
    """
    fields: dict[str, FormField] = {}
    for exchange in model.message_exchanges:
        if subject_id not in (exchange.sender, exchange.receiver):
            continue
        spec = model.spec_by_id(exchange.message_spec)
        for f in spec.payload_fields:
            fields.setdefault(
                f.name,
                FormField(name=f.name, display_name=f.display_name, field_type=f.field_type),
            )
    return tuple(fields.values())


def _compile_state(
    model: PassModel,
    subject_id: str,
    behavior: SubjectBehavior,
    state,
    subject_fields: tuple[FormField, ...],
) -> CompiledState:
    sid = state.component_id
    outgoing = behavior.outgoing(sid)
    compiled = CompiledState(
        state_id=sid, label=state.component_label, kind=state.kind, is_end=state.is_end
    )

    if state.is_end:
        if outgoing:
            raise UnsupportedConstruct(
                f"end state '{sid}' has outgoing transitions; subjects terminate "
                f"at end states"
            )
        return compiled

    do_ts = [t for t in outgoing if t.kind is TransitionKind.DO]
    send_ts = [t for t in outgoing if t.kind is TransitionKind.SEND]
    recv_ts = [t for t in outgoing if t.kind is TransitionKind.RECEIVE]
    timer_ts = [t for t in outgoing if t.kind is TransitionKind.TIMER]

    if len(timer_ts) > 1:
        raise UnsupportedConstruct(f"state '{sid}' has more than one timer transition")

    if state.kind is StateKind.SEND:
        if len(send_ts) != 1 or do_ts or recv_ts:
            raise UnsupportedConstruct(
                f"send state '{sid}' needs exactly one send transition"
            )
        t = send_ts[0]
        exchange = model.exchange_by_id(t.condition.message_exchange)
        if exchange.sender != subject_id:
            raise CompileError(
                f"send state '{sid}' sends exchange '{exchange.component_id}' "
                f"whose sender is '{exchange.sender}'"
            )
        compiled.on_enter = SendEffect(
            exchange_id=exchange.component_id, recipient_subject=exchange.receiver
        )
        compiled.triggers.append(
            Trigger(
                kind=TriggerKind.INTERNAL,
                target_state_id=t.target_state,
                match=t.component_id,
            )
        )
    elif state.kind is StateKind.RECEIVE:
        if do_ts or send_ts or not recv_ts:
            raise UnsupportedConstruct(
                f"receive state '{sid}' needs receive transitions only (>=1)"
            )
        for t in recv_ts:
            exchange = model.exchange_by_id(t.condition.message_exchange)
            if exchange.receiver != subject_id:
                raise CompileError(
                    f"receive state '{sid}' receives exchange "
                    f"'{exchange.component_id}' whose receiver is '{exchange.receiver}'"
                )
            compiled.triggers.append(
                Trigger(
                    kind=TriggerKind.MESSAGE,
                    target_state_id=t.target_state,
                    match=exchange.component_id,
                )
            )
    else:  # Do state
        if send_ts or recv_ts:
            raise UnsupportedConstruct(
                f"do state '{sid}' has send/receive transitions"
            )
        if not do_ts and not timer_ts:
            raise CompileError(f"non-end do state '{sid}' has no outgoing transition")
        if len(do_ts) > 1:
            labels = [t.component_label or t.component_id for t in do_ts]
            if len(set(labels)) != len(labels):
                raise CompileError(
                    f"do state '{sid}' has duplicate choice labels {labels}"
                )
            compiled.on_enter = InteractionEffect(
                fields=subject_fields, choices=tuple(labels)
            )
            for t, label in zip(do_ts, labels):
                compiled.triggers.append(
                    Trigger(
                        kind=TriggerKind.USER_CHOICE,
                        target_state_id=t.target_state,
                        match=label,
                    )
                )
        elif len(do_ts) == 1:
            t = do_ts[0]
            if subject_fields:
                # States that edit data always ask for interaction.
                label = t.component_label or t.component_id
                compiled.on_enter = InteractionEffect(fields=subject_fields, choices=())
                compiled.triggers.append(
                    Trigger(
                        kind=TriggerKind.USER_CHOICE,
                        target_state_id=t.target_state,
                        match=label,
                    )
                )
            else:
                compiled.triggers.append(
                    Trigger(
                        kind=TriggerKind.INTERNAL,
                        target_state_id=t.target_state,
                        match=t.component_id,
                    )
                )

    for t in timer_ts:
        compiled.triggers.append(
            Trigger(
                kind=TriggerKind.TIMER,
                target_state_id=t.target_state,
                match=format_duration(t.condition.duration),
                duration=t.condition.duration,
            )
        )
    return compiled


def _check_reachability(program: BehaviorProgram, subject_id: str) -> None:
    seen = {program.initial_state_id}
    queue = deque([program.initial_state_id])
    while queue:
        current = program.states.get(queue.popleft())
        if current is None:
            continue
        for t in current.triggers:
            if t.target_state_id not in program.states:
                raise CompileError(
                    f"subject '{subject_id}': state '{current.state_id}' targets "
                    f"unknown state '{t.target_state_id}'"
                )
            if t.target_state_id not in seen:
                seen.add(t.target_state_id)
                queue.append(t.target_state_id)
    unreachable = sorted(set(program.states) - seen)
    if unreachable:
        raise CompileError(
            f"subject '{subject_id}': states unreachable from the initial state: "
            f"{', '.join(unreachable)}"
        )
