"""Enriched intermediate form of a BPMN collaboration.

Each flow node is annotated with its owning participant, the kinds of its
neighbors, the message flows attached to it, and (for catch events) whether
it sits directly behind an event-based gateway. Translation rules then work
on one node at a time without walking the graph again.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..bpmn import BpmnDefinitions, BpmnFlowNode, BpmnMessageFlow, NodeKind
from ..bpmn.model import EVENT_GATEWAY_TARGET_KINDS, structural_problems
from ..errors import StructuralError


@dataclass
class SimpleNode:
    node: BpmnFlowNode
    participant_id: str
    predecessor_kinds: list[NodeKind] = field(default_factory=list)
    successor_kinds: list[NodeKind] = field(default_factory=list)
    after_event_gateway: bool = False
    gateway_id: str | None = None
    #: message flows this node sends (source) / receives (target)
    sent_flows: list[BpmnMessageFlow] = field(default_factory=list)
    received_flows: list[BpmnMessageFlow] = field(default_factory=list)


@dataclass
class SimpleBpmnModel:
    source: BpmnDefinitions
    nodes: dict[str, SimpleNode] = field(default_factory=dict)

    def nodes_of(self, participant_id: str) -> list[SimpleNode]:
        process = self.source.processes[participant_id]
        return [self.nodes[n.id] for n in process.flow_nodes]


def to_simple(model: BpmnDefinitions) -> SimpleBpmnModel:
    problems = structural_problems(model)
    if problems:
        raise StructuralError("; ".join(problems))

    simple = SimpleBpmnModel(source=model)
    for pid, process in model.processes.items():
        by_id = {n.id: n for n in process.flow_nodes}
        for node in process.flow_nodes:
            annotated = SimpleNode(node=node, participant_id=pid)
            for fid in node.incoming:
                flow = process.flow_by_id(fid)
                pred = by_id[flow.source_ref]
                annotated.predecessor_kinds.append(pred.kind)
                if pred.kind is NodeKind.EVENT_BASED_GATEWAY:
                    annotated.after_event_gateway = True
                    annotated.gateway_id = pred.id
            for fid in node.outgoing:
                flow = process.flow_by_id(fid)
                annotated.successor_kinds.append(by_id[flow.target_ref].kind)
            if annotated.after_event_gateway and node.kind not in EVENT_GATEWAY_TARGET_KINDS:
                raise StructuralError(
                    f"node '{node.id}' follows an event-based gateway but is a "
                    f"{node.kind.value}"
                )
            simple.nodes[node.id] = annotated

    for mf in model.message_flows:
        if mf.source_ref in simple.nodes:
            simple.nodes[mf.source_ref].sent_flows.append(mf)
        if mf.target_ref in simple.nodes:
            simple.nodes[mf.target_ref].received_flows.append(mf)
    return simple
