"""Parser for the supported BPMN 2.0 XML subset."""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET

from ..durations import parse_duration
from ..errors import MalformedXml, StructuralError, UnsupportedElement
from .model import (
    BpmnDefinitions,
    BpmnFlowNode,
    BpmnMessageFlow,
    BpmnParticipant,
    BpmnProcess,
    BpmnSequenceFlow,
    NodeKind,
    structural_problems,
)

logger = logging.getLogger(__name__)

BPMN_NS = "http://www.omg.org/spec/BPMN/20100524/MODEL"


def _q(tag: str) -> str:
    return f"{{{BPMN_NS}}}{tag}"


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _ns(tag: str) -> str:
    if tag.startswith("{"):
        return tag[1:].split("}", 1)[0]
    return ""


#: Process-level elements dropped with a warning: they decorate the model but
#: do not shape the executable control flow.
_DECORATION_TAGS = {
    "laneSet",
    "lane",
    "documentation",
    "extensionElements",
    "textAnnotation",
    "association",
    "dataObject",
    "dataObjectReference",
    "dataStoreReference",
    "ioSpecification",
    "dataAssociation",
    "monitoring",
    "auditing",
    "property",
    "group",
}

#: Definitions-level elements dropped silently (referenced data, not flow).
_DEFINITIONS_IGNORED = {
    "message",
    "signal",
    "error",
    "escalation",
    "itemDefinition",
    "dataStore",
    "category",
    "interface",
    "resource",
}


def parse_bpmn(document: bytes) -> BpmnDefinitions:
    """Parse BPMN 2.0 XML bytes into a :class:`BpmnDefinitions`.

    Diagram interchange, lanes, documentation and annotations are dropped;
    unsupported flow-node kinds raise :class:`UnsupportedElement`.
    """
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise MalformedXml(f"not well-formed XML: {exc}") from exc

    if root.tag != _q("definitions"):
        raise MalformedXml(
            f"root element is {root.tag!r}, expected BPMN 2.0 definitions "
            f"in namespace {BPMN_NS}"
        )

    collaboration = root.find(_q("collaboration"))
    if collaboration is None:
        raise StructuralError("document has no collaboration (pools are required)")

    participants: list[BpmnParticipant] = []
    message_flows: list[BpmnMessageFlow] = []
    for child in collaboration:
        tag = _local(child.tag)
        if tag == "participant":
            pid = child.get("id", "")
            process_ref = child.get("processRef", "")
            if not process_ref:
                raise StructuralError(f"participant '{pid}' has no processRef")
            participants.append(
                BpmnParticipant(id=pid, name=child.get("name", ""), process_ref=process_ref)
            )
        elif tag == "messageFlow":
            message_flows.append(
                BpmnMessageFlow(
                    id=child.get("id", ""),
                    name=child.get("name", ""),
                    source_ref=child.get("sourceRef", ""),
                    target_ref=child.get("targetRef", ""),
                )
            )
        else:
            logger.warning("dropping collaboration element <%s> id=%s", tag, child.get("id"))

    if not participants:
        raise StructuralError("collaboration has no participants")

    processes_by_ref: dict[str, BpmnProcess] = {}
    for proc_el in root.findall(_q("process")):
        process = _parse_process(proc_el)
        processes_by_ref[process.id] = process

    processes: dict[str, BpmnProcess] = {}
    for p in participants:
        if p.process_ref not in processes_by_ref:
            raise StructuralError(
                f"participant '{p.id}' references missing process '{p.process_ref}'"
            )
        processes[p.id] = processes_by_ref[p.process_ref]

    participant_ids = {p.id for p in participants}
    for mf in message_flows:
        for ref in (mf.source_ref, mf.target_ref):
            if ref in participant_ids:
                raise UnsupportedElement(
                    mf.id,
                    "messageFlow",
                    "message flows anchored on a pool boundary are not supported; "
                    "use explicit send and receive events",
                )

    defs = BpmnDefinitions(
        participants=participants, message_flows=message_flows, processes=processes
    )
    problems = structural_problems(defs)
    if problems:
        raise StructuralError("; ".join(problems))
    return defs


def _parse_process(proc_el: ET.Element) -> BpmnProcess:
    process = BpmnProcess(id=proc_el.get("id", ""))
    for child in proc_el:
        if _ns(child.tag) != BPMN_NS:
            continue  # vendor extensions are ignored, not errors
        tag = _local(child.tag)
        if tag == "sequenceFlow":
            process.sequence_flows.append(_parse_sequence_flow(child))
        elif tag in _DECORATION_TAGS:
            logger.warning(
                "dropping decoration <%s> id=%s in process %s",
                tag,
                child.get("id"),
                process.id,
            )
        elif tag in _DEFINITIONS_IGNORED:
            logger.warning("dropping <%s> id=%s", tag, child.get("id"))
        else:
            process.flow_nodes.append(_parse_flow_node(child, tag))
    process.link()
    return process


def _parse_sequence_flow(el: ET.Element) -> BpmnSequenceFlow:
    condition = None
    cond_el = el.find(_q("conditionExpression"))
    if cond_el is not None and cond_el.text and cond_el.text.strip():
        condition = cond_el.text.strip()
    return BpmnSequenceFlow(
        id=el.get("id", ""),
        name=el.get("name", ""),
        source_ref=el.get("sourceRef", ""),
        target_ref=el.get("targetRef", ""),
        condition=condition,
    )


def _event_definitions(el: ET.Element) -> list[str]:
    return [
        _local(child.tag)
        for child in el
        if _ns(child.tag) == BPMN_NS and _local(child.tag).endswith("EventDefinition")
    ]


def _parse_flow_node(el: ET.Element, tag: str) -> BpmnFlowNode:
    node_id = el.get("id", "")
    name = el.get("name", "")
    defs = _event_definitions(el)
    if len(defs) > 1:
        raise UnsupportedElement(node_id, tag, "multiple event definitions")

    if tag == "startEvent":
        if not defs:
            kind = NodeKind.START_EVENT
        elif defs == ["messageEventDefinition"]:
            kind = NodeKind.MESSAGE_START_EVENT
        else:
            raise UnsupportedElement(node_id, f"startEvent/{defs[0]}")
        return BpmnFlowNode(id=node_id, kind=kind, name=name)

    if tag == "endEvent":
        if defs:
            raise UnsupportedElement(node_id, f"endEvent/{defs[0]}")
        return BpmnFlowNode(id=node_id, kind=NodeKind.END_EVENT, name=name)

    if tag == "task":
        return BpmnFlowNode(id=node_id, kind=NodeKind.TASK, name=name)

    if tag == "exclusiveGateway":
        return BpmnFlowNode(id=node_id, kind=NodeKind.EXCLUSIVE_GATEWAY, name=name)

    if tag == "eventBasedGateway":
        return BpmnFlowNode(id=node_id, kind=NodeKind.EVENT_BASED_GATEWAY, name=name)

    if tag == "intermediateThrowEvent":
        if defs == ["messageEventDefinition"]:
            return BpmnFlowNode(id=node_id, kind=NodeKind.THROW_MESSAGE_EVENT, name=name)
        raise UnsupportedElement(node_id, f"intermediateThrowEvent/{defs or 'none'}")

    if tag == "intermediateCatchEvent":
        if defs == ["messageEventDefinition"]:
            return BpmnFlowNode(id=node_id, kind=NodeKind.CATCH_MESSAGE_EVENT, name=name)
        if defs == ["timerEventDefinition"]:
            timer_el = el.find(_q("timerEventDefinition"))
            return BpmnFlowNode(
                id=node_id,
                kind=NodeKind.CATCH_TIME_EVENT,
                name=name,
                timer_duration=_parse_timer(timer_el, node_id),
            )
        raise UnsupportedElement(node_id, f"intermediateCatchEvent/{defs or 'none'}")

    raise UnsupportedElement(node_id, tag)


def _parse_timer(timer_el: ET.Element, node_id: str):
    duration_el = timer_el.find(_q("timeDuration"))
    if duration_el is None:
        others = [_local(c.tag) for c in timer_el if _ns(c.tag) == BPMN_NS]
        raise UnsupportedElement(
            node_id,
            f"timerEventDefinition/{others[0] if others else 'empty'}",
            "only duration timers are supported",
        )
    text = (duration_el.text or "").strip()
    try:
        return parse_duration(text)
    except ValueError as exc:
        raise UnsupportedElement(node_id, "timerEventDefinition", str(exc)) from exc
