"""Compiled behavior programs: the state tables the runtime interprets.

A program is plain data (states, triggers, effects) rather than generated
source code, so stored copies stay byte-comparable and loading one can never
execute foreign code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import timedelta
from enum import Enum

from ..passmodel import BusinessField, StateKind


class TriggerKind(str, Enum):
    INTERNAL = "internal"       # self-message after an automatic step
    MESSAGE = "message"         # process message matching an exchange id
    TIMER = "timer"             # scheduled wakeup
    USER_CHOICE = "userChoice"  # completed interaction (choice label match)


@dataclass(frozen=True)
class Trigger:
    kind: TriggerKind
    target_state_id: str
    #: exchange id (message), choice label (userChoice), canonical duration
    #: (timer) or transition id (internal).
    match: str = ""
    duration: timedelta | None = None


@dataclass(frozen=True)
class SendEffect:
    exchange_id: str
    recipient_subject: str
    payload_template: tuple[tuple[str, object], ...] = ()


@dataclass(frozen=True)
class FormField:
    name: str
    display_name: str
    field_type: str
    read_only: bool = False


@dataclass(frozen=True)
class InteractionEffect:
    fields: tuple[FormField, ...] = ()
    choices: tuple[str, ...] = ()


@dataclass
class CompiledState:
    state_id: str
    label: str
    kind: StateKind
    is_end: bool = False
    on_enter: SendEffect | InteractionEffect | None = None
    triggers: list[Trigger] = field(default_factory=list)

    @property
    def timeout(self) -> Trigger | None:
        for t in self.triggers:
            if t.kind is TriggerKind.TIMER:
                return t
        return None

    @property
    def message_triggers(self) -> list[Trigger]:
        return [t for t in self.triggers if t.kind is TriggerKind.MESSAGE]


@dataclass
class BehaviorProgram:
    subject_id: str
    subject_label: str
    model_name: str
    initial_state_id: str
    is_start_subject: bool = False
    target_system: str = "server"
    states: dict[str, CompiledState] = field(default_factory=dict)


@dataclass(frozen=True)
class CatalogEntry:
    spec_label: str
    sender: str
    receiver: str
    payload_fields: tuple[BusinessField, ...] = ()


@dataclass
class MessageCatalog:
    entries: dict[str, CatalogEntry] = field(default_factory=dict)

    def __getitem__(self, exchange_id: str) -> CatalogEntry:
        return self.entries[exchange_id]

    def __contains__(self, exchange_id: str) -> bool:
        return exchange_id in self.entries


@dataclass
class CompiledModel:
    model_name: str
    programs: dict[str, BehaviorProgram]
    catalog: MessageCatalog
