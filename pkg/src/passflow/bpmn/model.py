"""In-memory model of the supported BPMN 2.0 collaboration subset."""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import timedelta
from enum import Enum


class NodeKind(str, Enum):
    START_EVENT = "StartEvent"
    MESSAGE_START_EVENT = "MessageStartEvent"
    END_EVENT = "EndEvent"
    TASK = "Task"
    EXCLUSIVE_GATEWAY = "ExclusiveGateway"
    EVENT_BASED_GATEWAY = "EventBasedGateway"
    THROW_MESSAGE_EVENT = "IntermediateThrowMessageEvent"
    CATCH_MESSAGE_EVENT = "IntermediateCatchMessageEvent"
    CATCH_TIME_EVENT = "IntermediateCatchTimeEvent"


#: Kinds that may start a process.
START_KINDS = {NodeKind.START_EVENT, NodeKind.MESSAGE_START_EVENT}

#: Intermediate event kinds (exactly one outgoing sequence flow each).
INTERMEDIATE_EVENT_KINDS = {
    NodeKind.THROW_MESSAGE_EVENT,
    NodeKind.CATCH_MESSAGE_EVENT,
    NodeKind.CATCH_TIME_EVENT,
}

#: Catch kinds allowed directly after an event-based gateway.
EVENT_GATEWAY_TARGET_KINDS = {
    NodeKind.CATCH_MESSAGE_EVENT,
    NodeKind.CATCH_TIME_EVENT,
}


@dataclass
class BpmnFlowNode:
    id: str
    kind: NodeKind
    name: str = ""
    timer_duration: timedelta | None = None
    incoming: list[str] = field(default_factory=list)
    outgoing: list[str] = field(default_factory=list)


@dataclass
class BpmnSequenceFlow:
    id: str
    source_ref: str
    target_ref: str
    name: str = ""
    condition: str | None = None


@dataclass
class BpmnProcess:
    id: str
    flow_nodes: list[BpmnFlowNode] = field(default_factory=list)
    sequence_flows: list[BpmnSequenceFlow] = field(default_factory=list)

    def node_by_id(self, node_id: str) -> BpmnFlowNode | None:
        for node in self.flow_nodes:
            if node.id == node_id:
                return node
        return None

    def flow_by_id(self, flow_id: str) -> BpmnSequenceFlow | None:
        for flow in self.sequence_flows:
            if flow.id == flow_id:
                return flow
        return None

    def link(self) -> None:
        """Recompute every node's incoming/outgoing lists from the flows."""
        for node in self.flow_nodes:
            node.incoming = []
            node.outgoing = []
        by_id = {n.id: n for n in self.flow_nodes}
        for flow in self.sequence_flows:
            if flow.source_ref in by_id:
                by_id[flow.source_ref].outgoing.append(flow.id)
            if flow.target_ref in by_id:
                by_id[flow.target_ref].incoming.append(flow.id)


@dataclass
class BpmnParticipant:
    id: str
    name: str
    process_ref: str


@dataclass
class BpmnMessageFlow:
    id: str
    source_ref: str
    target_ref: str
    name: str = ""


@dataclass
class BpmnDefinitions:
    participants: list[BpmnParticipant] = field(default_factory=list)
    message_flows: list[BpmnMessageFlow] = field(default_factory=list)
    #: participant id -> process
    processes: dict[str, BpmnProcess] = field(default_factory=dict)

    def process_of(self, participant_id: str) -> BpmnProcess:
        return self.processes[participant_id]

    def owner_of_node(self, node_id: str) -> str | None:
        """Participant id owning a flow node, or None."""
        for pid, process in self.processes.items():
            if process.node_by_id(node_id) is not None:
                return pid
        return None

    def all_ids(self) -> set[str]:
        """Every element id in the document (participants, flows, nodes)."""
        ids = {p.id for p in self.participants}
        ids.update(mf.id for mf in self.message_flows)
        for process in self.processes.values():
            ids.add(process.id)
            ids.update(n.id for n in process.flow_nodes)
            ids.update(f.id for f in process.sequence_flows)
        return ids


def structural_problems(defs: BpmnDefinitions) -> list[str]:
    """All violations of the model invariants, as human-readable strings.

    Shared by the parser (reports as StructuralError) and the serializer
    (reports as InvariantViolation).
    """
    problems: list[str] = []

    seen_pids: set[str] = set()
    for p in defs.participants:
        if not p.id:
            problems.append("participant with empty id")
        if p.id in seen_pids:
            problems.append(f"duplicate participant id '{p.id}'")
        seen_pids.add(p.id)
        if p.id not in defs.processes:
            problems.append(f"participant '{p.id}' has no process")
        elif defs.processes[p.id].id != p.process_ref:
            problems.append(
                f"participant '{p.id}' references process '{p.process_ref}' "
                f"but owns '{defs.processes[p.id].id}'"
            )
    for pid in defs.processes:
        if pid not in seen_pids:
            problems.append(f"process owned by unknown participant '{pid}'")

    # Document-wide id uniqueness (required for id-preserving translation).
    counts: dict[str, int] = {}
    for eid in _iter_ids(defs):
        counts[eid] = counts.get(eid, 0) + 1
    for eid, n in counts.items():
        if n > 1:
            problems.append(f"id '{eid}' appears {n} times in the document")

    node_owner: dict[str, str] = {}
    for pid, process in defs.processes.items():
        problems.extend(_process_problems(process))
        for node in process.flow_nodes:
            node_owner[node.id] = pid

    for mf in defs.message_flows:
        if mf.source_ref == mf.target_ref:
            problems.append(f"message flow '{mf.id}' connects an element to itself")
        src_owner = node_owner.get(mf.source_ref)
        dst_owner = node_owner.get(mf.target_ref)
        if src_owner is None:
            problems.append(
                f"message flow '{mf.id}' source '{mf.source_ref}' is not a flow node"
            )
        if dst_owner is None:
            problems.append(
                f"message flow '{mf.id}' target '{mf.target_ref}' is not a flow node"
            )
        if src_owner is not None and src_owner == dst_owner:
            problems.append(
                f"message flow '{mf.id}' stays within participant '{src_owner}'"
            )
    return problems


def _iter_ids(defs: BpmnDefinitions):
    for p in defs.participants:
        yield p.id
    for mf in defs.message_flows:
        yield mf.id
    for process in defs.processes.values():
        yield process.id
        for n in process.flow_nodes:
            yield n.id
        for f in process.sequence_flows:
            yield f.id


def _process_problems(process: BpmnProcess) -> list[str]:
    problems: list[str] = []
    by_id = {n.id: n for n in process.flow_nodes}

    starts = [n for n in process.flow_nodes if n.kind in START_KINDS]
    ends = [n for n in process.flow_nodes if n.kind is NodeKind.END_EVENT]
    if len(starts) != 1:
        problems.append(
            f"process '{process.id}' has {len(starts)} start events (needs exactly 1)"
        )
    if not ends:
        problems.append(f"process '{process.id}' has no end event")

    for flow in process.sequence_flows:
        for ref in (flow.source_ref, flow.target_ref):
            if ref not in by_id:
                problems.append(
                    f"sequence flow '{flow.id}' references unknown node '{ref}'"
                )

    # Check the incoming/outgoing lists against the flows.
    expected_in: dict[str, list[str]] = {n.id: [] for n in process.flow_nodes}
    expected_out: dict[str, list[str]] = {n.id: [] for n in process.flow_nodes}
    for flow in process.sequence_flows:
        if flow.source_ref in expected_out:
            expected_out[flow.source_ref].append(flow.id)
        if flow.target_ref in expected_in:
            expected_in[flow.target_ref].append(flow.id)

    for node in process.flow_nodes:
        if sorted(node.incoming) != sorted(expected_in[node.id]) or sorted(
            node.outgoing
        ) != sorted(expected_out[node.id]):
            problems.append(
                f"node '{node.id}' incoming/outgoing lists do not match the flows"
            )
        n_in = len(expected_in[node.id])
        n_out = len(expected_out[node.id])
        if node.kind in START_KINDS:
            if n_in:
                problems.append(f"start event '{node.id}' has incoming flows")
            if n_out != 1:
                problems.append(
                    f"start event '{node.id}' needs exactly 1 outgoing flow, has {n_out}"
                )
        elif node.kind is NodeKind.END_EVENT:
            if n_out:
                problems.append(f"end event '{node.id}' has outgoing flows")
            if not n_in:
                problems.append(f"end event '{node.id}' has no incoming flow")
        else:
            if not n_in:
                problems.append(f"node '{node.id}' has no incoming flow")
            if not n_out:
                problems.append(f"node '{node.id}' has no outgoing flow")
        if node.kind in INTERMEDIATE_EVENT_KINDS and n_out > 1:
            problems.append(
                f"intermediate event '{node.id}' has {n_out} outgoing flows (max 1)"
            )
        if node.kind is NodeKind.EVENT_BASED_GATEWAY:
            if n_out < 2:
                problems.append(
                    f"event-based gateway '{node.id}' needs >=2 outgoing flows"
                )
            for fid in expected_out[node.id]:
                flow = process.flow_by_id(fid)
                target = by_id.get(flow.target_ref) if flow else None
                if target is not None and target.kind not in EVENT_GATEWAY_TARGET_KINDS:
                    problems.append(
                        f"event-based gateway '{node.id}' branch '{fid}' does not "
                        f"lead directly to a message or timer catch event"
                    )
        if node.kind is NodeKind.CATCH_TIME_EVENT and node.timer_duration is None:
            problems.append(f"timer event '{node.id}' has no duration")
        if node.kind is not NodeKind.CATCH_TIME_EVENT and node.timer_duration:
            problems.append(f"non-timer node '{node.id}' carries a duration")

    # Catch events reached from an event-based gateway must have that gateway
    # as their only predecessor.
    for node in process.flow_nodes:
        if node.kind not in EVENT_GATEWAY_TARGET_KINDS:
            continue
        gateway_preds = []
        for fid in expected_in[node.id]:
            flow = process.flow_by_id(fid)
            src = by_id.get(flow.source_ref) if flow else None
            if src is not None and src.kind is NodeKind.EVENT_BASED_GATEWAY:
                gateway_preds.append(src.id)
        if gateway_preds and len(expected_in[node.id]) > 1:
            problems.append(
                f"catch event '{node.id}' follows an event-based gateway but has "
                f"additional incoming flows"
            )
    return problems
