"""PASS domain model: subject interaction (SID) plus per-subject behaviors (SBDs)."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from datetime import timedelta
from enum import Enum

FIELD_TYPES = ("integer", "string", "date")


class StateKind(str, Enum):
    DO = "Do"
    SEND = "Send"
    RECEIVE = "Receive"


class TransitionKind(str, Enum):
    DO = "DoTransition"
    SEND = "SendTransition"
    RECEIVE = "ReceiveTransition"
    TIMER = "DayTimeTimerTransition"


@dataclass(frozen=True)
class BusinessField:
    name: str
    display_name: str
    field_type: str  # one of FIELD_TYPES

    def __post_init__(self):
        if self.field_type not in FIELD_TYPES:
            raise ValueError(f"unsupported field type '{self.field_type}'")


@dataclass
class Subject:
    component_id: str
    component_label: str
    is_start_subject: bool = False


@dataclass
class MessageSpecification:
    component_id: str
    component_label: str
    payload_fields: list[BusinessField] = field(default_factory=list)


@dataclass
class MessageExchange:
    component_id: str
    sender: str      # subject component id
    receiver: str    # subject component id
    message_spec: str  # specification component id


@dataclass
class SendCondition:
    component_id: str
    message_exchange: str
    message_sent_to: str  # receiver subject id


@dataclass
class ReceiveCondition:
    component_id: str
    message_exchange: str
    message_sent_from: str  # sender subject id


@dataclass
class TimerCondition:
    component_id: str
    duration: timedelta


@dataclass
class State:
    component_id: str
    component_label: str
    kind: StateKind
    is_initial: bool = False
    is_end: bool = False
    action_id: str = ""

    def __post_init__(self):
        if not self.action_id:
            self.action_id = f"{self.component_id}_action"


@dataclass
class Transition:
    component_id: str
    kind: TransitionKind
    source_state: str
    target_state: str
    component_label: str = ""
    condition: SendCondition | ReceiveCondition | TimerCondition | None = None
    # When a transition realizes a gateway branch (entry flow + catch event +
    # exit flow collapse into one transition), the connector flow ids are kept
    # here so an exact back-translation is possible.
    via_incoming_flow: str | None = None
    via_outgoing_flow: str | None = None


@dataclass
class SubjectBehavior:
    component_id: str
    states: list[State] = field(default_factory=list)
    transitions: list[Transition] = field(default_factory=list)

    @property
    def initial_state_id(self) -> str | None:
        for state in self.states:
            if state.is_initial:
                return state.component_id
        return None

    def state_by_id(self, state_id: str) -> State | None:
        for state in self.states:
            if state.component_id == state_id:
                return state
        return None

    def outgoing(self, state_id: str) -> list[Transition]:
        return [t for t in self.transitions if t.source_state == state_id]


@dataclass(eq=False)
class PassModel:
    name: str = "process-model"
    subjects: list[Subject] = field(default_factory=list)
    message_specifications: list[MessageSpecification] = field(default_factory=list)
    message_exchanges: list[MessageExchange] = field(default_factory=list)
    #: subject component id -> behavior
    behaviors: dict[str, SubjectBehavior] = field(default_factory=dict)

    def subject_by_id(self, subject_id: str) -> Subject | None:
        for s in self.subjects:
            if s.component_id == subject_id:
                return s
        return None

    def spec_by_id(self, spec_id: str) -> MessageSpecification | None:
        for s in self.message_specifications:
            if s.component_id == spec_id:
                return s
        return None

    def exchange_by_id(self, exchange_id: str) -> MessageExchange | None:
        for e in self.message_exchanges:
            if e.component_id == exchange_id:
                return e
        return None

    def all_component_ids_list(self) -> list[str]:
        """Every component id, with multiplicity (duplicates are a defect)."""
        ids = [s.component_id for s in self.subjects]
        ids += [s.component_id for s in self.message_specifications]
        ids += [e.component_id for e in self.message_exchanges]
        for behavior in self.behaviors.values():
            ids.append(behavior.component_id)
            ids += [s.component_id for s in behavior.states]
            ids += [t.component_id for t in behavior.transitions]
        return ids

    def all_component_ids(self) -> set[str]:
        return set(self.all_component_ids_list())

    def normalized(self) -> "PassModel":
        """Copy with all element lists sorted by component id.

        RDF carries no element order, so structural equality of models is
        defined over this canonical form.
        """
        key = lambda x: x.component_id
        return PassModel(
            name=self.name,
            subjects=sorted((replace(s) for s in self.subjects), key=key),
            message_specifications=sorted(
                (replace(s, payload_fields=list(s.payload_fields))
                 for s in self.message_specifications),
                key=key,
            ),
            message_exchanges=sorted(
                (replace(e) for e in self.message_exchanges), key=key
            ),
            behaviors={
                sid: SubjectBehavior(
                    component_id=b.component_id,
                    states=sorted((replace(s) for s in b.states), key=key),
                    transitions=sorted((replace(t) for t in b.transitions), key=key),
                )
                for sid, b in sorted(self.behaviors.items())
            },
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PassModel):
            return NotImplemented
        a, b = self.normalized(), other.normalized()
        return (
            a.name == b.name
            and a.subjects == b.subjects
            and a.message_specifications == b.message_specifications
            and a.message_exchanges == b.message_exchanges
            and a.behaviors == b.behaviors
        )
