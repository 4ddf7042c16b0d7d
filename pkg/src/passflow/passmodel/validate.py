"""Structural validation of PASS models.

A model is complete iff every message exchange in the SID is handled by a
send transition in the sender's behavior and a receive transition in the
receiver's behavior, and no transition references an exchange outside the
SID. Findings are returned, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    PassModel,
    ReceiveCondition,
    SendCondition,
    StateKind,
    TimerCondition,
    TransitionKind,
)

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Finding:
    severity: str
    component_id: str
    rule: str
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding]

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == ERROR]

    @property
    def ok(self) -> bool:
        return not self.errors

    def __iter__(self):
        return iter(self.findings)

    def __len__(self):
        return len(self.findings)


def validate_pass(model: PassModel) -> ValidationReport:
    findings: list[Finding] = []
    add = lambda sev, cid, rule, msg: findings.append(Finding(sev, cid, rule, msg))

    subject_ids = [s.component_id for s in model.subjects]
    for sid in _duplicates(subject_ids):
        add(ERROR, sid, "duplicate-subject-id", f"subject id '{sid}' not unique")

    for cid in _duplicates(model.all_component_ids_list()):
        add(ERROR, cid, "duplicate-component-id", f"component id '{cid}' not unique")

    spec_ids = {s.component_id for s in model.message_specifications}
    exchange_ids = {e.component_id for e in model.message_exchanges}

    for exchange in model.message_exchanges:
        if exchange.sender == exchange.receiver:
            add(
                ERROR,
                exchange.component_id,
                "self-exchange",
                "sender and receiver subject are identical",
            )
        for role, ref in (("sender", exchange.sender), ("receiver", exchange.receiver)):
            if ref not in set(subject_ids):
                add(
                    ERROR,
                    exchange.component_id,
                    "dangling-exchange-subject",
                    f"{role} subject '{ref}' does not exist",
                )
        if exchange.message_spec not in spec_ids:
            add(
                ERROR,
                exchange.component_id,
                "dangling-exchange-spec",
                f"message specification '{exchange.message_spec}' does not exist",
            )

    for subject in model.subjects:
        if subject.component_id not in model.behaviors:
            add(
                ERROR,
                subject.component_id,
                "missing-behavior",
                "subject has no behavior",
            )
    for sid in model.behaviors:
        if sid not in set(subject_ids):
            add(ERROR, sid, "orphan-behavior", "behavior owned by unknown subject")

    sends: dict[str, list[str]] = {}    # exchange id -> subject ids with a send
    receives: dict[str, list[str]] = {}
    for sid, behavior in model.behaviors.items():
        _check_behavior(model, sid, behavior, findings)
        for t in behavior.transitions:
            if t.kind is TransitionKind.SEND and isinstance(t.condition, SendCondition):
                sends.setdefault(t.condition.message_exchange, []).append(sid)
            if t.kind is TransitionKind.RECEIVE and isinstance(
                t.condition, ReceiveCondition
            ):
                receives.setdefault(t.condition.message_exchange, []).append(sid)

    for exchange in model.message_exchanges:
        eid = exchange.component_id
        if exchange.sender not in sends.get(eid, []):
            add(
                ERROR,
                eid,
                "unhandled-exchange",
                f"no send transition for exchange '{eid}' in sender "
                f"'{exchange.sender}'",
            )
        if exchange.receiver not in receives.get(eid, []):
            add(
                ERROR,
                eid,
                "unhandled-exchange",
                f"no receive transition for exchange '{eid}' in receiver "
                f"'{exchange.receiver}'",
            )
    for eid, sids in sends.items():
        if eid not in exchange_ids:
            continue  # reported per-transition as dangling
        exchange = model.exchange_by_id(eid)
        for sid in sids:
            if sid != exchange.sender:
                add(
                    ERROR,
                    eid,
                    "wrong-sender",
                    f"subject '{sid}' sends exchange '{eid}' but its sender is "
                    f"'{exchange.sender}'",
                )
    for eid, sids in receives.items():
        if eid not in exchange_ids:
            continue
        exchange = model.exchange_by_id(eid)
        for sid in sids:
            if sid != exchange.receiver:
                add(
                    ERROR,
                    eid,
                    "wrong-receiver",
                    f"subject '{sid}' receives exchange '{eid}' but its receiver "
                    f"is '{exchange.receiver}'",
                )

    # Splits are XOR by construction: the four transition kinds cannot express
    # an AND split, so there is nothing beyond kind-checking to enforce here
    # (unknown kinds are reported by _check_behavior).
    ordered = sorted(findings, key=lambda f: (f.rule, f.component_id, f.message))
    return ValidationReport(ordered)


def _check_behavior(model, sid, behavior, findings):
    add = lambda sev, cid, rule, msg: findings.append(Finding(sev, cid, rule, msg))
    state_ids = {s.component_id for s in behavior.states}

    initials = [s for s in behavior.states if s.is_initial]
    if len(initials) > 1:
        add(
            ERROR,
            behavior.component_id,
            "multiple-initial-states",
            f"behavior has {len(initials)} initial states",
        )
    elif not initials:
        add(ERROR, behavior.component_id, "no-initial-state", "behavior has no initial state")
    if not any(s.is_end for s in behavior.states):
        add(ERROR, behavior.component_id, "no-end-state", "behavior has no end state")

    exchange_ids = {e.component_id for e in model.message_exchanges}

    outgoing: dict[str, int] = {s.component_id: 0 for s in behavior.states}
    for t in behavior.transitions:
        if t.source_state in outgoing:
            outgoing[t.source_state] += 1
        for ref in (t.source_state, t.target_state):
            if ref not in state_ids:
                add(
                    ERROR,
                    t.component_id,
                    "dangling-transition",
                    f"transition references unknown state '{ref}'",
                )
        src = behavior.state_by_id(t.source_state)
        if t.kind is TransitionKind.SEND:
            if src is not None and src.kind is not StateKind.SEND:
                add(
                    ERROR,
                    t.component_id,
                    "send-from-non-send-state",
                    f"send transition leaves a {src.kind.value} state",
                )
            if not isinstance(t.condition, SendCondition):
                add(
                    ERROR,
                    t.component_id,
                    "missing-send-condition",
                    "send transition has no send condition",
                )
            elif t.condition.message_exchange not in exchange_ids:
                add(
                    ERROR,
                    t.component_id,
                    "unknown-exchange",
                    f"send transition references unknown exchange "
                    f"'{t.condition.message_exchange}'",
                )
        elif t.kind is TransitionKind.RECEIVE:
            if src is not None and src.kind is not StateKind.RECEIVE:
                add(
                    ERROR,
                    t.component_id,
                    "receive-from-non-receive-state",
                    f"receive transition leaves a {src.kind.value} state",
                )
            if not isinstance(t.condition, ReceiveCondition):
                add(
                    ERROR,
                    t.component_id,
                    "missing-receive-condition",
                    "receive transition has no receive condition",
                )
            elif t.condition.message_exchange not in exchange_ids:
                add(
                    ERROR,
                    t.component_id,
                    "unknown-exchange",
                    f"receive transition references unknown exchange "
                    f"'{t.condition.message_exchange}'",
                )
        elif t.kind is TransitionKind.TIMER:
            if not isinstance(t.condition, TimerCondition):
                add(
                    ERROR,
                    t.component_id,
                    "missing-timer-duration",
                    "timer transition has no duration condition",
                )

    for state in behavior.states:
        if not state.is_end and outgoing[state.component_id] == 0:
            add(
                ERROR,
                state.component_id,
                "dead-end-state",
                "non-end state has no outgoing transition",
            )
        if not state.action_id:
            add(ERROR, state.component_id, "missing-action", "state has no action")


def _duplicates(items):
    seen, dups = set(), []
    for item in items:
        if item in seen and item not in dups:
            dups.append(item)
        seen.add(item)
    return dups
