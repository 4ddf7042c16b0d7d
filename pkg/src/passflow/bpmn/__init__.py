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
from .reader import BPMN_NS, parse_bpmn
from .writer import serialize_bpmn

__all__ = [
    "BPMN_NS",
    "BpmnDefinitions",
    "BpmnFlowNode",
    "BpmnMessageFlow",
    "BpmnParticipant",
    "BpmnProcess",
    "BpmnSequenceFlow",
    "NodeKind",
    "parse_bpmn",
    "serialize_bpmn",
    "structural_problems",
]
