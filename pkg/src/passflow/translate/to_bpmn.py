"""Translation of a PASS model back into a BPMN collaboration.

On the image of the forward translation this is an exact inverse: component
ids become BPMN ids again and collapsed gateway branches are re-expanded from
the connector flow ids kept on the transitions. For other models, structure
decides: do states become tasks (or exclusive gateways when they branch),
send states become throw message events, and receive states with several
receive/timer transitions become an event-based gateway followed by catch
events with ids derived from the state id.
"""

from __future__ import annotations

from ..bpmn import (
    BpmnDefinitions,
    BpmnFlowNode,
    BpmnMessageFlow,
    BpmnParticipant,
    BpmnProcess,
    BpmnSequenceFlow,
    NodeKind,
)
from ..bpmn.model import structural_problems
from ..errors import Untranslatable
from ..passmodel import (
    PassModel,
    StateKind,
    SubjectBehavior,
    TimerCondition,
    Transition,
    TransitionKind,
)
from ..passmodel.validate import validate_pass
from .to_pass import default_label


def _name_from(label: str, kind: str, element_id: str) -> str:
    """Inverse of the unnamed-element labeling rule."""
    return "" if label == default_label(kind, element_id) else label


def translate_to_bpmn(model: PassModel) -> BpmnDefinitions:
    report = validate_pass(model)
    if not report.ok:
        details = "; ".join(f"{f.component_id}: {f.message}" for f in report.errors)
        raise Untranslatable(f"model fails validation: {details}")

    defs = BpmnDefinitions()
    send_node_of_exchange: dict[str, str] = {}
    receive_node_of_exchange: dict[str, str] = {}

    for subject in model.subjects:
        behavior = model.behaviors[subject.component_id]
        process = BpmnProcess(id=behavior.component_id)
        defs.participants.append(
            BpmnParticipant(
                id=subject.component_id,
                name=_name_from(subject.component_label, "Participant", subject.component_id),
                process_ref=behavior.component_id,
            )
        )
        defs.processes[subject.component_id] = process
        _emit_behavior(
            behavior, process, model, send_node_of_exchange, receive_node_of_exchange
        )

    for exchange in model.message_exchanges:
        eid = exchange.component_id
        if eid not in send_node_of_exchange or eid not in receive_node_of_exchange:
            raise Untranslatable(
                f"exchange '{eid}' is not realized by exactly one send and one "
                f"receive event"
            )
        spec = model.spec_by_id(exchange.message_spec)
        defs.message_flows.append(
            BpmnMessageFlow(
                id=eid,
                name=_name_from(spec.component_label, "MessageFlow", eid),
                source_ref=send_node_of_exchange[eid],
                target_ref=receive_node_of_exchange[eid],
            )
        )

    for process in defs.processes.values():
        process.link()
    problems = structural_problems(defs)
    if problems:
        raise Untranslatable(
            "model maps outside the supported BPMN subset: " + "; ".join(problems)
        )
    return defs


def _emit_behavior(
    behavior: SubjectBehavior,
    process: BpmnProcess,
    model: PassModel,
    send_node_of_exchange: dict[str, str],
    receive_node_of_exchange: dict[str, str],
) -> None:
    # Where incoming/outgoing flows of each state attach after emission.
    anchor_in: dict[str, str] = {}
    anchor_out: dict[str, str] = {}

    def add_node(node_id: str, kind: NodeKind, label: str = "", **kw) -> BpmnFlowNode:
        node = BpmnFlowNode(
            id=node_id, kind=kind, name=_name_from(label, kind.value, node_id), **kw
        )
        process.flow_nodes.append(node)
        return node

    for state in behavior.states:
        outgoing = behavior.outgoing(state.component_id)
        sid = state.component_id
        do_ts = [t for t in outgoing if t.kind is TransitionKind.DO]
        timer_ts = [t for t in outgoing if t.kind is TransitionKind.TIMER]
        recv_ts = [t for t in outgoing if t.kind is TransitionKind.RECEIVE]
        send_ts = [t for t in outgoing if t.kind is TransitionKind.SEND]

        if state.is_end:
            if state.kind is not StateKind.DO or outgoing:
                raise Untranslatable(
                    f"end state '{sid}' cannot be expressed as a BPMN end event"
                )
            add_node(sid, NodeKind.END_EVENT, state.component_label)
            anchor_in[sid] = sid
            continue

        if state.kind is StateKind.DO:
            if timer_ts and (do_ts or len(timer_ts) > 1):
                raise Untranslatable(
                    f"do state '{sid}' mixes timer and do transitions"
                )
            if timer_ts:
                # A do state whose only exit is a timer is a timer catch event.
                t = timer_ts[0]
                if not isinstance(t.condition, TimerCondition):
                    raise Untranslatable(f"timer transition '{t.component_id}' has no duration")
                if state.is_initial:
                    raise Untranslatable(f"initial state '{sid}' cannot be a timer event")
                add_node(
                    sid,
                    NodeKind.CATCH_TIME_EVENT,
                    state.component_label,
                    timer_duration=t.condition.duration,
                )
                anchor_in[sid] = sid
                anchor_out[sid] = sid
                continue
            if not do_ts:
                raise Untranslatable(f"do state '{sid}' has no do transition")
            if len(do_ts) == 1:
                if state.is_initial:
                    add_node(sid, NodeKind.START_EVENT, state.component_label)
                else:
                    add_node(sid, NodeKind.TASK, state.component_label)
                    anchor_in[sid] = sid
                anchor_out[sid] = sid
            else:
                gateway_kind = NodeKind.EXCLUSIVE_GATEWAY
                if state.is_initial:
                    add_node(f"{sid}_start", NodeKind.START_EVENT, state.component_label)
                    add_node(sid, gateway_kind)
                    process.sequence_flows.append(
                        BpmnSequenceFlow(
                            id=f"{sid}_start_flow", source_ref=f"{sid}_start", target_ref=sid
                        )
                    )
                else:
                    add_node(sid, gateway_kind, state.component_label)
                    anchor_in[sid] = sid
                anchor_out[sid] = sid
            continue

        if state.kind is StateKind.SEND:
            if len(send_ts) != 1 or do_ts or recv_ts or timer_ts:
                raise Untranslatable(
                    f"send state '{sid}' must have exactly one send transition"
                )
            t = send_ts[0]
            if state.is_initial:
                add_node(f"{sid}_start", NodeKind.START_EVENT, state.component_label)
                add_node(sid, NodeKind.THROW_MESSAGE_EVENT, state.component_label)
                process.sequence_flows.append(
                    BpmnSequenceFlow(
                        id=f"{sid}_start_flow", source_ref=f"{sid}_start", target_ref=sid
                    )
                )
            else:
                add_node(sid, NodeKind.THROW_MESSAGE_EVENT, state.component_label)
                anchor_in[sid] = sid
            anchor_out[sid] = sid
            exchange_id = t.condition.message_exchange
            if exchange_id in send_node_of_exchange:
                raise Untranslatable(
                    f"exchange '{exchange_id}' is sent by more than one state"
                )
            send_node_of_exchange[exchange_id] = sid
            continue

        # Receive states.
        if do_ts or send_ts:
            raise Untranslatable(
                f"receive state '{sid}' has non-receive outgoing transitions"
            )
        if not recv_ts:
            raise Untranslatable(f"receive state '{sid}' has no receive transition")
        if len(timer_ts) > 1:
            raise Untranslatable(f"receive state '{sid}' has several timer transitions")
        branches = [t for t in outgoing if t.kind in (TransitionKind.RECEIVE, TransitionKind.TIMER)]
        expanded = len(branches) > 1 or any(t.via_incoming_flow for t in branches)
        if state.is_initial:
            if expanded:
                raise Untranslatable(
                    f"initial receive state '{sid}' waits for more than one event"
                )
            t = recv_ts[0]
            add_node(sid, NodeKind.MESSAGE_START_EVENT, state.component_label)
            anchor_out[sid] = sid
            receive_node_of_exchange[t.condition.message_exchange] = sid
            continue
        if not expanded:
            t = recv_ts[0]
            add_node(sid, NodeKind.CATCH_MESSAGE_EVENT, state.component_label)
            anchor_in[sid] = sid
            anchor_out[sid] = sid
            receive_node_of_exchange[t.condition.message_exchange] = sid
            continue
        add_node(sid, NodeKind.EVENT_BASED_GATEWAY, state.component_label)
        anchor_in[sid] = sid
        anchor_out[sid] = sid

    # Transition pass: emit sequence flows (and gateway branch fragments).
    for state in behavior.states:
        sid = state.component_id
        outgoing = behavior.outgoing(sid)
        if state.kind is StateKind.RECEIVE and process.node_by_id(sid) is not None and \
                process.node_by_id(sid).kind is NodeKind.EVENT_BASED_GATEWAY:
            _emit_gateway_branches(
                behavior, state, process, model, anchor_in, receive_node_of_exchange
            )
            continue
        for t in outgoing:
            if t.kind is TransitionKind.DO:
                source_node = anchor_out[sid]
                multi = len([x for x in outgoing if x.kind is TransitionKind.DO]) > 1
                condition = None
                name = ""
                if multi:
                    condition = _name_from(t.component_label, "SequenceFlow", t.component_id) or None
                else:
                    name = _name_from(t.component_label, "SequenceFlow", t.component_id)
                process.sequence_flows.append(
                    BpmnSequenceFlow(
                        id=t.component_id,
                        source_ref=source_node,
                        target_ref=_anchor_in(anchor_in, t, behavior),
                        name=name,
                        condition=condition,
                    )
                )
            elif t.kind in (TransitionKind.SEND, TransitionKind.RECEIVE, TransitionKind.TIMER):
                process.sequence_flows.append(
                    BpmnSequenceFlow(
                        id=t.component_id,
                        source_ref=anchor_out[sid],
                        target_ref=_anchor_in(anchor_in, t, behavior),
                    )
                )


def _anchor_in(anchor_in: dict[str, str], t: Transition, behavior: SubjectBehavior) -> str:
    target = anchor_in.get(t.target_state)
    if target is None:
        raise Untranslatable(
            f"transition '{t.component_id}' targets state '{t.target_state}' "
            f"which has no BPMN entry point (initial states cannot be re-entered)"
        )
    return target


def _emit_gateway_branches(
    behavior: SubjectBehavior,
    state,
    process: BpmnProcess,
    model: PassModel,
    anchor_in: dict[str, str],
    receive_node_of_exchange: dict[str, str],
) -> None:
    sid = state.component_id
    for n, t in enumerate(behavior.outgoing(sid), start=1):
        restored = bool(t.via_incoming_flow)
        event_id = t.component_id if restored else f"{sid}_ev{n}"
        in_flow = t.via_incoming_flow or f"{event_id}_in"
        out_flow = t.via_outgoing_flow or f"{event_id}_out"
        if t.kind is TransitionKind.RECEIVE:
            node = BpmnFlowNode(
                id=event_id,
                kind=NodeKind.CATCH_MESSAGE_EVENT,
                name=_name_from(
                    t.component_label, NodeKind.CATCH_MESSAGE_EVENT.value, event_id
                ),
            )
            exchange_id = t.condition.message_exchange
            if exchange_id in receive_node_of_exchange:
                raise Untranslatable(
                    f"exchange '{exchange_id}' is received by more than one state"
                )
            receive_node_of_exchange[exchange_id] = event_id
            spec = model.spec_by_id(model.exchange_by_id(exchange_id).message_spec)
            # Message names live on the message flow; drop the propagated label.
            if node.name == spec.component_label:
                node.name = ""
        else:
            node = BpmnFlowNode(
                id=event_id,
                kind=NodeKind.CATCH_TIME_EVENT,
                name=_name_from(
                    t.component_label, NodeKind.CATCH_TIME_EVENT.value, event_id
                ),
                timer_duration=t.condition.duration,
            )
        process.flow_nodes.append(node)
        process.sequence_flows.append(
            BpmnSequenceFlow(id=in_flow, source_ref=sid, target_ref=event_id)
        )
        process.sequence_flows.append(
            BpmnSequenceFlow(
                id=out_flow,
                source_ref=event_id,
                target_ref=_anchor_in(anchor_in, t, behavior),
            )
        )
