"""Element-by-element translation of a BPMN collaboration into a PASS model.

Element ids carry over: the BPMN id of an element becomes the component id of
the PASS element realizing it, so translating back can restore the exact id
set. Helper elements that exist only on the PASS side (actions, conditions,
message specifications) get derived ids with a fixed suffix.

Rules per element:

- participant            -> subject
- message flow           -> message specification + message exchange
- process                -> subject behavior
- start event            -> do state (initial)
- message start event    -> receive state (initial) + receive transition
- end event              -> do state (end)
- task                   -> do state
- exclusive gateway      -> do state; outgoing flow conditions label the
                            outgoing do transitions
- throw message event    -> send state; its outgoing flow becomes the send
                            transition
- event-based gateway    -> receive state
- catch message event    -> receive transition (+ fresh receive state when not
                            behind an event-based gateway)
- catch time event       -> timer transition (+ fresh do state when not behind
                            an event-based gateway)
- sequence flow          -> do transition, unless already realized above

A catch event directly behind an event-based gateway collapses together with
its two connector flows into a single transition on the gateway's receive
state; the connector flow ids are kept on the transition for back-translation.
"""

from __future__ import annotations

from ..bpmn import BpmnFlowNode, NodeKind
from ..errors import AmbiguousMessageFlow, DanglingMessageFlow, UnmappableElement
from ..passmodel import (
    MessageExchange,
    MessageSpecification,
    PassModel,
    ReceiveCondition,
    SendCondition,
    State,
    StateKind,
    Subject,
    SubjectBehavior,
    TimerCondition,
    Transition,
    TransitionKind,
)
from .simple import SimpleBpmnModel, SimpleNode

_STATE_KIND_OF_NODE = {
    NodeKind.START_EVENT: StateKind.DO,
    NodeKind.MESSAGE_START_EVENT: StateKind.RECEIVE,
    NodeKind.END_EVENT: StateKind.DO,
    NodeKind.TASK: StateKind.DO,
    NodeKind.EXCLUSIVE_GATEWAY: StateKind.DO,
    NodeKind.THROW_MESSAGE_EVENT: StateKind.SEND,
    NodeKind.EVENT_BASED_GATEWAY: StateKind.RECEIVE,
    NodeKind.CATCH_MESSAGE_EVENT: StateKind.RECEIVE,
    NodeKind.CATCH_TIME_EVENT: StateKind.DO,
}


def default_label(kind: str, element_id: str) -> str:
    """Label used for unnamed elements; recognized and dropped when
    translating back so namelessness survives a round trip."""
    return f"{kind}_{element_id}"


def node_label(node: BpmnFlowNode) -> str:
    return node.name or default_label(node.kind.value, node.id)


def translate_to_pass(model: SimpleBpmnModel, *, name: str = "process-model") -> PassModel:
    result = PassModel(name=name)
    defs = model.source

    for participant in defs.participants:
        process = defs.processes[participant.id]
        start = next(n for n in process.flow_nodes if n.kind is NodeKind.START_EVENT or
                     n.kind is NodeKind.MESSAGE_START_EVENT)
        result.subjects.append(
            Subject(
                component_id=participant.id,
                component_label=participant.name
                or default_label("Participant", participant.id),
                is_start_subject=start.kind is NodeKind.START_EVENT,
            )
        )

    spec_of_flow: dict[str, str] = {}
    for mf in defs.message_flows:
        spec_id = f"{mf.id}_spec"
        label = mf.name or default_label("MessageFlow", mf.id)
        result.message_specifications.append(
            MessageSpecification(component_id=spec_id, component_label=label)
        )
        sender = defs.owner_of_node(mf.source_ref)
        receiver = defs.owner_of_node(mf.target_ref)
        result.message_exchanges.append(
            MessageExchange(
                component_id=mf.id,
                sender=sender,
                receiver=receiver,
                message_spec=spec_id,
            )
        )
        spec_of_flow[mf.id] = spec_id

    for participant in defs.participants:
        behavior = _translate_behavior(model, participant.id, result)
        result.behaviors[participant.id] = behavior
    return result


def _single_message_flow(annotated: SimpleNode, direction: str):
    flows = annotated.sent_flows if direction == "send" else annotated.received_flows
    node = annotated.node
    if not flows:
        raise DanglingMessageFlow(
            f"{node.kind.value} '{node.id}' has no attached message flow"
        )
    if len(flows) > 1:
        raise AmbiguousMessageFlow(
            f"{node.kind.value} '{node.id}' matches {len(flows)} message flows; "
            f"message flows are 1:1"
        )
    return flows[0]


def _translate_behavior(
    model: SimpleBpmnModel, participant_id: str, result: PassModel
) -> SubjectBehavior:
    defs = model.source
    process = defs.processes[participant_id]
    behavior = SubjectBehavior(component_id=process.id)

    # Nodes that become states (catch events behind an event-based gateway
    # dissolve into transitions of the gateway's receive state).
    state_of_node: dict[str, str] = {}
    for node in process.flow_nodes:
        annotated = model.nodes[node.id]
        if (
            node.kind in (NodeKind.CATCH_MESSAGE_EVENT, NodeKind.CATCH_TIME_EVENT)
            and annotated.after_event_gateway
        ):
            continue
        if node.kind not in _STATE_KIND_OF_NODE:  # pragma: no cover - parser filters
            raise UnmappableElement(f"no rule for node kind {node.kind!r}")
        behavior.states.append(
            State(
                component_id=node.id,
                component_label=node_label(node),
                kind=_STATE_KIND_OF_NODE[node.kind],
                is_initial=node.kind in (NodeKind.START_EVENT, NodeKind.MESSAGE_START_EVENT),
                is_end=node.kind is NodeKind.END_EVENT,
            )
        )
        state_of_node[node.id] = node.id

    def target_state_of_flow(flow_id: str) -> str:
        flow = process.flow_by_id(flow_id)
        return state_of_node[flow.target_ref]

    consumed_flows: set[str] = set()

    for node in process.flow_nodes:
        annotated = model.nodes[node.id]
        if node.kind is NodeKind.THROW_MESSAGE_EVENT:
            mf = _single_message_flow(annotated, "send")
            out_flow = node.outgoing[0]
            exchange = result.exchange_by_id(mf.id)
            spec = result.spec_by_id(exchange.message_spec)
            behavior.transitions.append(
                Transition(
                    component_id=out_flow,
                    kind=TransitionKind.SEND,
                    source_state=node.id,
                    target_state=target_state_of_flow(out_flow),
                    component_label=spec.component_label,
                    condition=SendCondition(
                        component_id=f"{out_flow}_cond",
                        message_exchange=mf.id,
                        message_sent_to=exchange.receiver,
                    ),
                )
            )
            consumed_flows.add(out_flow)
        elif node.kind in (NodeKind.MESSAGE_START_EVENT, NodeKind.CATCH_MESSAGE_EVENT):
            mf = _single_message_flow(annotated, "receive")
            out_flow = node.outgoing[0]
            exchange = result.exchange_by_id(mf.id)
            spec = result.spec_by_id(exchange.message_spec)
            condition = ReceiveCondition(
                component_id="",  # filled below, id depends on placement
                message_exchange=mf.id,
                message_sent_from=exchange.sender,
            )
            if annotated.after_event_gateway:
                # The transition absorbs the event and both connector flows.
                in_flow = node.incoming[0]
                condition.component_id = f"{node.id}_cond"
                behavior.transitions.append(
                    Transition(
                        component_id=node.id,
                        kind=TransitionKind.RECEIVE,
                        source_state=annotated.gateway_id,
                        target_state=target_state_of_flow(out_flow),
                        component_label=spec.component_label,
                        condition=condition,
                        via_incoming_flow=in_flow,
                        via_outgoing_flow=out_flow,
                    )
                )
                consumed_flows.update((in_flow, out_flow))
            else:
                condition.component_id = f"{out_flow}_cond"
                behavior.transitions.append(
                    Transition(
                        component_id=out_flow,
                        kind=TransitionKind.RECEIVE,
                        source_state=node.id,
                        target_state=target_state_of_flow(out_flow),
                        component_label=spec.component_label,
                        condition=condition,
                    )
                )
                consumed_flows.add(out_flow)
        elif node.kind is NodeKind.CATCH_TIME_EVENT:
            out_flow = node.outgoing[0]
            if annotated.after_event_gateway:
                in_flow = node.incoming[0]
                behavior.transitions.append(
                    Transition(
                        component_id=node.id,
                        kind=TransitionKind.TIMER,
                        source_state=annotated.gateway_id,
                        target_state=target_state_of_flow(out_flow),
                        component_label=node_label(node),
                        condition=TimerCondition(
                            component_id=f"{node.id}_cond",
                            duration=node.timer_duration,
                        ),
                        via_incoming_flow=in_flow,
                        via_outgoing_flow=out_flow,
                    )
                )
                consumed_flows.update((in_flow, out_flow))
            else:
                behavior.transitions.append(
                    Transition(
                        component_id=out_flow,
                        kind=TransitionKind.TIMER,
                        source_state=node.id,
                        target_state=target_state_of_flow(out_flow),
                        component_label=node_label(node),
                        condition=TimerCondition(
                            component_id=f"{out_flow}_cond",
                            duration=node.timer_duration,
                        ),
                    )
                )
                consumed_flows.add(out_flow)

    # Remaining sequence flows become do transitions; exclusive gateway
    # branch conditions become the transition labels.
    for flow in process.sequence_flows:
        if flow.id in consumed_flows:
            continue
        source_node = process.node_by_id(flow.source_ref)
        if source_node.kind is NodeKind.EXCLUSIVE_GATEWAY and flow.condition:
            label = flow.condition
        else:
            label = flow.name or default_label("SequenceFlow", flow.id)
        behavior.transitions.append(
            Transition(
                component_id=flow.id,
                kind=TransitionKind.DO,
                source_state=state_of_node[flow.source_ref],
                target_state=state_of_node[flow.target_ref],
                component_label=label,
            )
        )
    return behavior
