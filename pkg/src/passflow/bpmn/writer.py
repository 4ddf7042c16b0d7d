"""Serializer emitting BPMN 2.0 XML from the in-memory model."""

from __future__ import annotations

import xml.etree.ElementTree as ET

from ..durations import format_duration
from ..errors import InvariantViolation
from .model import BpmnDefinitions, BpmnFlowNode, NodeKind, structural_problems
from .reader import BPMN_NS

_TARGET_NS = "http://passflow.local/bpmn"

_EVENT_TAGS = {
    NodeKind.START_EVENT: ("startEvent", None),
    NodeKind.MESSAGE_START_EVENT: ("startEvent", "messageEventDefinition"),
    NodeKind.END_EVENT: ("endEvent", None),
    NodeKind.TASK: ("task", None),
    NodeKind.EXCLUSIVE_GATEWAY: ("exclusiveGateway", None),
    NodeKind.EVENT_BASED_GATEWAY: ("eventBasedGateway", None),
    NodeKind.THROW_MESSAGE_EVENT: ("intermediateThrowEvent", "messageEventDefinition"),
    NodeKind.CATCH_MESSAGE_EVENT: ("intermediateCatchEvent", "messageEventDefinition"),
    NodeKind.CATCH_TIME_EVENT: ("intermediateCatchEvent", "timerEventDefinition"),
}


def serialize_bpmn(model: BpmnDefinitions) -> bytes:
    """Emit BPMN 2.0 XML (collaboration + processes), no diagram section."""
    problems = structural_problems(model)
    if problems:
        raise InvariantViolation("; ".join(problems))

    ET.register_namespace("", BPMN_NS)
    root = ET.Element(
        f"{{{BPMN_NS}}}definitions",
        {"id": "Definitions_1", "targetNamespace": _TARGET_NS},
    )

    collaboration = ET.SubElement(
        root, f"{{{BPMN_NS}}}collaboration", {"id": "Collaboration_1"}
    )
    for p in model.participants:
        attrs = {"id": p.id}
        if p.name:
            attrs["name"] = p.name
        attrs["processRef"] = p.process_ref
        ET.SubElement(collaboration, f"{{{BPMN_NS}}}participant", attrs)
    for mf in model.message_flows:
        attrs = {"id": mf.id}
        if mf.name:
            attrs["name"] = mf.name
        attrs["sourceRef"] = mf.source_ref
        attrs["targetRef"] = mf.target_ref
        ET.SubElement(collaboration, f"{{{BPMN_NS}}}messageFlow", attrs)

    emitted: set[str] = set()
    for p in model.participants:
        process = model.processes[p.id]
        if process.id in emitted:
            continue
        emitted.add(process.id)
        proc_el = ET.SubElement(root, f"{{{BPMN_NS}}}process", {"id": process.id})
        for node in process.flow_nodes:
            _emit_node(proc_el, node)
        for flow in process.sequence_flows:
            attrs = {"id": flow.id}
            if flow.name:
                attrs["name"] = flow.name
            attrs["sourceRef"] = flow.source_ref
            attrs["targetRef"] = flow.target_ref
            flow_el = ET.SubElement(proc_el, f"{{{BPMN_NS}}}sequenceFlow", attrs)
            if flow.condition:
                cond = ET.SubElement(flow_el, f"{{{BPMN_NS}}}conditionExpression")
                cond.text = flow.condition

    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)


def _emit_node(proc_el: ET.Element, node: BpmnFlowNode) -> None:
    tag, event_def = _EVENT_TAGS[node.kind]
    attrs = {"id": node.id}
    if node.name:
        attrs["name"] = node.name
    el = ET.SubElement(proc_el, f"{{{BPMN_NS}}}{tag}", attrs)
    for fid in node.incoming:
        ET.SubElement(el, f"{{{BPMN_NS}}}incoming").text = fid
    for fid in node.outgoing:
        ET.SubElement(el, f"{{{BPMN_NS}}}outgoing").text = fid
    if event_def:
        def_el = ET.SubElement(
            el, f"{{{BPMN_NS}}}{event_def}", {"id": f"{node.id}_def"}
        )
        if node.kind is NodeKind.CATCH_TIME_EVENT:
            duration = ET.SubElement(def_el, f"{{{BPMN_NS}}}timeDuration")
            duration.text = format_duration(node.timer_duration)
