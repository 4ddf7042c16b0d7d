"""Process actors: interpret one behavior program per subject.

An actor processes one message at a time and owns all of its state: the
current program state, the input pool, learned peer addresses, and the local
business-object store. Strict execution order is enforced the same way for
every trigger kind:

- process messages that match a live receive trigger advance the state;
  anything else lands in the input pool (FIFO, oldest consumed first);
- internal transition messages carry the state and entry epoch they belong
  to and are discarded when they arrive out of order;
- timer wakeups carry a token and are ignored when the pending marker was
  cleared by an earlier state change.
"""

from __future__ import annotations

from collections import deque
from typing import Callable

from ..compiler import (
    BehaviorProgram,
    InteractionEffect,
    MessageCatalog,
    SendEffect,
    TriggerKind,
)
from ..durations import duration_ms
from . import envelope as ev
from .address import ActorAddress
from .bus import Actor, MessageBus
from .envelope import EngineMessage
from .trace import (
    ACTOR_EXITED,
    MESSAGE_RECEIVED,
    MESSAGE_SENT,
    STATE_ENTERED,
    TIMER_FIRED,
)

_PLACEHOLDERS = {"integer": 0, "string": "", "date": None}


def placeholder_for(field_type: str):
    """Placeholder content for fields absent from the local store."""
    return _PLACEHOLDERS.get(field_type, "")


class ProcessActor(Actor):
    def __init__(
        self,
        address: ActorAddress,
        bus: MessageBus,
        program: BehaviorProgram,
        catalog: MessageCatalog,
        spawner: Callable[[str], ActorAddress],
    ):
        super().__init__(address, bus)
        self.program = program
        self.catalog = catalog
        self.spawner = spawner
        self.subject = program.subject_id

        self.instance_id = ""
        self.instance_name = ""
        self.model_name = program.model_name
        self.director: ActorAddress | None = None
        self.io_actors: list[ActorAddress] = []
        self.recursive_exit = True
        self.timer_scale = 1.0

        self.initialized = False
        self.active = False
        self.exited = False
        self.current_state_id: str | None = None
        self.entry_epoch = 0
        self.pending_timer_token: str | None = None
        self.pending_request_id: int | None = None
        self.has_open_interaction = False

        self.pool: deque[dict] = deque()
        self.addressbook: dict[str, ActorAddress] = {}
        self.learned: dict[str, ActorAddress] = {}
        self.store: dict[str, object] = {}
        self.children: list[ActorAddress] = []

    # -- message dispatch ----------------------------------------------------

    def receive(self, message: EngineMessage) -> None:
        if self.exited:
            return
        handler = getattr(self, f"_on_{message.type}", None)
        if handler is None:
            self.emit(
                "malformedMessage", self.instance_id, self.subject, type=message.type
            )
            return
        handler(message)

    # -- initialization and discovery -----------------------------------------

    def _on_init(self, message: EngineMessage) -> None:
        if self.initialized:
            return
        body = message.body
        self.initialized = True
        self.instance_id = message.instance_id
        self.instance_name = body.get("instanceName", "")
        self.model_name = body.get("modelName", self.model_name)
        self.director = body["director"]
        self.io_actors = list(body.get("ioActors", []))
        self.recursive_exit = bool(body.get("recursiveExit", True))
        self.timer_scale = float(body.get("timerScale", 1.0))
        creator = body.get("creatorSubject")
        if creator and message.sender is not None:
            self.learned[creator] = message.sender
        self.send(
            self.director,
            EngineMessage(
                type=ev.REGISTER,
                instance_id=self.instance_id,
                body={"subject": self.subject},
            ),
        )

    def _on_addressbook(self, message: EngineMessage) -> None:
        entries: dict[str, ActorAddress] = dict(message.body.get("entries", {}))
        self.addressbook = entries
        self.io_actors = list(message.body.get("ioActors", self.io_actors))
        if self.active:
            return
        mine = entries.get(self.subject)
        if mine == self.address:
            # Registration confirmed; start interpreting the program.
            self.active = True
            self._advance(self.program.initial_state_id)
        elif mine is not None:
            # Another actor already owns this (instance, subject) slot. Pass
            # the pooled messages on, leave a redirect for anything still in
            # flight, and bow out without ever having acted as the subject.
            for pooled in self.pool:
                self.send(
                    mine,
                    EngineMessage(
                        type=ev.PROCESS,
                        instance_id=self.instance_id,
                        body={**pooled, "forwarded": True},
                    ),
                )
            self.pool.clear()
            self.emit(
                "duplicateExit",
                self.instance_id,
                self.subject,
                winner=str(mine),
            )
            self.exited = True
            self.bus.terminate(self.address, redirect_to=mine)

    # -- process messages ------------------------------------------------------

    def _on_process(self, message: EngineMessage) -> None:
        body = message.body
        sender_subject = body.get("senderSubject", "")
        if sender_subject and not body.get("forwarded") and message.sender is not None:
            self.learned[sender_subject] = message.sender
        entry = {
            "exchangeId": body.get("exchangeId", ""),
            "senderSubject": sender_subject,
            "payload": body.get("payload", {}),
        }
        if self.active:
            state = self.program.states[self.current_state_id]
            for trigger in state.message_triggers:
                if trigger.match == entry["exchangeId"]:
                    self._consume(entry, trigger, via_pool=False)
                    return
        self.pool.append(entry)
        self.emit(
            "messagePooled",
            self.instance_id,
            self.subject,
            exchange=entry["exchangeId"],
            poolSize=len(self.pool),
        )

    def _consume(self, entry: dict, trigger, via_pool: bool) -> None:
        self._apply_payload(entry["exchangeId"], entry["payload"])
        self.emit(
            MESSAGE_RECEIVED,
            self.instance_id,
            self.subject,
            exchange=entry["exchangeId"],
            sender=entry["senderSubject"],
            viaPool=via_pool,
        )
        self._advance(trigger.target_state_id)

    # -- internal transitions ----------------------------------------------------

    def _on_internal(self, message: EngineMessage) -> None:
        body = message.body
        if (
            not self.active
            or body.get("fromState") != self.current_state_id
            or body.get("epoch") != self.entry_epoch
        ):
            self.emit(
                "internalDiscarded",
                self.instance_id,
                self.subject,
                fromState=body.get("fromState", ""),
            )
            return
        state = self.program.states[self.current_state_id]
        for trigger in state.triggers:
            if trigger.kind is TriggerKind.INTERNAL and trigger.match == body.get(
                "transitionId"
            ):
                self._advance(trigger.target_state_id)
                return
        self.emit(
            "internalDiscarded",
            self.instance_id,
            self.subject,
            fromState=body.get("fromState", ""),
        )

    # -- timers -------------------------------------------------------------------

    def _on_wakeup(self, message: EngineMessage) -> None:
        token = message.body.get("token")
        if not self.active or token != self.pending_timer_token:
            self.emit("wakeupIgnored", self.instance_id, self.subject, token=token or "")
            return
        state = self.program.states[self.current_state_id]
        timeout = state.timeout
        self.emit(
            TIMER_FIRED,
            self.instance_id,
            self.subject,
            state=state.state_id,
            target=timeout.target_state_id,
        )
        self._advance(timeout.target_state_id)

    # -- interaction ----------------------------------------------------------------

    def _on_ioack(self, message: EngineMessage) -> None:
        if self.has_open_interaction:
            self.pending_request_id = message.body.get("requestId")
        else:
            # The state was already left; the request is void.
            self.send(
                message.sender,
                EngineMessage(
                    type=ev.IOCANCEL,
                    instance_id=self.instance_id,
                    body={"requestId": message.body.get("requestId")},
                ),
            )

    def _on_iocomplete(self, message: EngineMessage) -> None:
        body = message.body
        if not self.active or not self.has_open_interaction:
            self.emit("ioCompleteDiscarded", self.instance_id, self.subject)
            return
        if (
            self.pending_request_id is not None
            and body.get("requestId") != self.pending_request_id
        ):
            self.emit("ioCompleteDiscarded", self.instance_id, self.subject)
            return
        state = self.program.states[self.current_state_id]
        effect = state.on_enter
        values = body.get("values") or {}
        allowed = {f.name for f in effect.fields if not f.read_only}
        for name, value in values.items():
            if name in allowed:
                self.store[name] = value
        choice = body.get("choice")
        chosen = None
        user_triggers = [t for t in state.triggers if t.kind is TriggerKind.USER_CHOICE]
        if effect.choices:
            for trigger in user_triggers:
                if trigger.match == choice:
                    chosen = trigger
                    break
        elif user_triggers:
            chosen = user_triggers[0]
        if chosen is None:
            self.emit(
                "ioCompleteDiscarded",
                self.instance_id,
                self.subject,
                choice=choice or "",
            )
            return
        self.has_open_interaction = False
        self.pending_request_id = None
        self._advance(chosen.target_state_id)

    # -- exit -------------------------------------------------------------------------

    def _on_exit(self, message: EngineMessage) -> None:
        self._exit(recursive=bool(message.body.get("recursive", True)))

    def _exit(self, recursive: bool) -> None:
        if self.exited:
            return
        if self.has_open_interaction and self.io_actors:
            self._cancel_interaction()
        if recursive:
            for child in self.children:
                self.send(
                    child,
                    EngineMessage(
                        type=ev.EXIT,
                        instance_id=self.instance_id,
                        body={"recursive": True},
                    ),
                )
        if self.pool:
            self.emit(
                "poolResidue",
                self.instance_id,
                self.subject,
                exchanges=",".join(e["exchangeId"] for e in self.pool),
            )
        self._terminate(deregister=True)

    def _terminate(self, deregister: bool) -> None:
        self.exited = True
        if deregister and self.director is not None:
            self.send(
                self.director,
                EngineMessage(
                    type=ev.DEREGISTER,
                    instance_id=self.instance_id,
                    body={"subject": self.subject},
                ),
            )
        self.emit(ACTOR_EXITED, self.instance_id, self.subject)
        self.bus.terminate(self.address)

    # -- state machine ------------------------------------------------------------------

    def _advance(self, target_state_id: str) -> None:
        self.pending_timer_token = None
        if self.has_open_interaction:
            self._cancel_interaction()
        self.entry_epoch += 1
        self.current_state_id = target_state_id
        self._enter(self.program.states[target_state_id])

    def _cancel_interaction(self) -> None:
        self.send(
            self.io_actors[0],
            EngineMessage(
                type=ev.IOCANCEL, instance_id=self.instance_id, body={"all": True}
            ),
        )
        self.has_open_interaction = False
        self.pending_request_id = None

    def _enter(self, state) -> None:
        epoch = self.entry_epoch
        self.emit(
            STATE_ENTERED,
            self.instance_id,
            self.subject,
            state=state.state_id,
            label=state.label,
            kind=state.kind.value,
        )
        if state.is_end:
            self._exit(recursive=self.recursive_exit)
            return

        effect = state.on_enter
        if isinstance(effect, SendEffect):
            self._perform_send(state, effect)
        elif isinstance(effect, InteractionEffect):
            self._request_interaction(state, effect)
        elif state.message_triggers:
            self._scan_pool(state)
        else:
            internal = next(
                (t for t in state.triggers if t.kind is TriggerKind.INTERNAL), None
            )
            if internal is not None:
                self._send_internal(state, internal)

        # A pool hit above may have advanced the state already.
        if self.entry_epoch == epoch and state.timeout is not None:
            token = f"{state.state_id}#{epoch}"
            self.pending_timer_token = token
            delay = max(0, round(duration_ms(state.timeout.duration) * self.timer_scale))
            self.bus.schedule_wakeup(self.address, delay, token, self.instance_id)

    def _scan_pool(self, state) -> None:
        for idx, entry in enumerate(self.pool):
            for trigger in state.message_triggers:
                if trigger.match == entry["exchangeId"]:
                    del self.pool[idx]
                    self._consume(entry, trigger, via_pool=True)
                    return

    def _send_internal(self, state, trigger) -> None:
        self.send(
            self.address,
            EngineMessage(
                type=ev.INTERNAL,
                instance_id=self.instance_id,
                body={
                    "fromState": state.state_id,
                    "transitionId": trigger.match,
                    "epoch": self.entry_epoch,
                },
            ),
        )

    def _request_interaction(self, state, effect: InteractionEffect) -> None:
        form = {
            "fields": [
                {
                    "name": f.name,
                    "displayName": f.display_name,
                    "fieldType": f.field_type,
                    "readOnly": f.read_only,
                    "value": self.store.get(f.name, placeholder_for(f.field_type)),
                }
                for f in effect.fields
            ],
            "choices": list(effect.choices),
        }
        context = {
            "instanceName": self.instance_name,
            "modelName": self.model_name,
            "subjectLabel": self.program.subject_label,
            "stateLabel": state.label,
        }
        self.has_open_interaction = True
        self.pending_request_id = None
        self.send(
            self.io_actors[0],
            EngineMessage(
                type=ev.IOREQUEST,
                instance_id=self.instance_id,
                body={"formSpec": form, "context": context},
            ),
        )

    def _perform_send(self, state, effect: SendEffect) -> None:
        recipient = self._resolve(effect.recipient_subject)
        payload = dict(effect.payload_template) or self._build_payload(effect.exchange_id)
        self.send(
            recipient,
            EngineMessage(
                type=ev.PROCESS,
                instance_id=self.instance_id,
                body={
                    "exchangeId": effect.exchange_id,
                    "senderSubject": self.subject,
                    "payload": payload,
                },
            ),
        )
        self.emit(
            MESSAGE_SENT,
            self.instance_id,
            self.subject,
            exchange=effect.exchange_id,
            to=effect.recipient_subject,
        )
        internal = next(t for t in state.triggers if t.kind is TriggerKind.INTERNAL)
        self._send_internal(state, internal)

    def _resolve(self, subject: str) -> ActorAddress:
        address = self.addressbook.get(subject)
        if address is not None:
            return address
        address = self.learned.get(subject)
        if address is not None:
            return address
        # Unknown everywhere: create the recipient and initialize it at once.
        address = self.spawner(subject)
        self.children.append(address)
        self.learned[subject] = address
        self.send(
            address,
            EngineMessage(
                type=ev.INIT,
                instance_id=self.instance_id,
                body={
                    "subject": subject,
                    "instanceName": self.instance_name,
                    "modelName": self.model_name,
                    "director": self.director,
                    "ioActors": list(self.io_actors),
                    "recursiveExit": self.recursive_exit,
                    "timerScale": self.timer_scale,
                    "creatorSubject": self.subject,
                },
            ),
        )
        return address

    def _build_payload(self, exchange_id: str) -> dict:
        if exchange_id not in self.catalog:
            return {}
        entry = self.catalog[exchange_id]
        return {
            f.name: self.store.get(f.name, placeholder_for(f.field_type))
            for f in entry.payload_fields
        }

    def _apply_payload(self, exchange_id: str, payload: dict) -> None:
        if exchange_id not in self.catalog:
            return
        for f in self.catalog[exchange_id].payload_fields:
            if f.name in payload:
                self.store[f.name] = payload[f.name]
