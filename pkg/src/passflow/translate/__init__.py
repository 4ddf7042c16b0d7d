from .simple import SimpleBpmnModel, SimpleNode, to_simple
from .to_bpmn import translate_to_bpmn
from .to_pass import default_label, translate_to_pass

__all__ = [
    "SimpleBpmnModel",
    "SimpleNode",
    "default_label",
    "to_simple",
    "translate_to_bpmn",
    "translate_to_pass",
]
