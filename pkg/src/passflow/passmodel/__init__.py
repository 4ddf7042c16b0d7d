from .model import (
    BusinessField,
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
from .owl_reader import read_owl
from .owl_writer import write_owl
from .validate import ERROR, WARNING, Finding, ValidationReport, validate_pass

__all__ = [
    "BusinessField",
    "ERROR",
    "Finding",
    "MessageExchange",
    "MessageSpecification",
    "PassModel",
    "ReceiveCondition",
    "SendCondition",
    "State",
    "StateKind",
    "Subject",
    "SubjectBehavior",
    "TimerCondition",
    "Transition",
    "TransitionKind",
    "ValidationReport",
    "WARNING",
    "read_owl",
    "validate_pass",
    "write_owl",
]
