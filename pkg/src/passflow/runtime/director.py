"""The director: instance-scoped actor registry and discovery authority.

All registration traffic is serialized through this single actor, which is
what resolves concurrent-creation races: the first registration for an
(instance, subject) slot wins and is broadcast to every actor of the
instance (including the registrant); a later registrant for an occupied slot
only receives the current addressbook, sees the slot held by someone else,
and retires itself.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import envelope as ev
from .address import ActorAddress
from .bus import Actor, MessageBus
from .envelope import EngineMessage


@dataclass
class InstanceRecord:
    instance_name: str
    model_name: str
    registry: dict[str, ActorAddress] = field(default_factory=dict)
    finished: bool = False


class DirectorActor(Actor):
    def __init__(self, address: ActorAddress, bus: MessageBus):
        super().__init__(address, bus)
        self.instances: dict[str, InstanceRecord] = {}
        self.io_actors: list[ActorAddress] = []
        self.bound_instance: dict[ActorAddress, str] = {}

    def receive(self, message: EngineMessage) -> None:
        if message.type == ev.REGISTER:
            self._on_register(message)
        elif message.type == ev.DEREGISTER:
            self._on_deregister(message)
        else:
            self.emit("directorIgnored", message.instance_id, "director", type=message.type)

    # -- registration --------------------------------------------------------

    def _on_register(self, message: EngineMessage) -> None:
        instance_id = message.instance_id
        subject = message.body.get("subject", "")
        address = message.sender
        record = self.instances.get(instance_id)
        if record is None or record.finished:
            # Unknown or stopped instance: refuse and shut the stray down.
            self.emit(
                "registerRefused", instance_id, "director",
                subject=subject, reason="unknownInstance",
            )
            self.send(
                address,
                EngineMessage(
                    type=ev.EXIT, instance_id=instance_id, body={"recursive": False}
                ),
            )
            return
        bound = self.bound_instance.get(address)
        if bound is not None and bound != instance_id:
            # An address may serve at most one instance; refuse and leave the
            # registry untouched (cross-instance messaging must stay impossible).
            self.emit(
                "crossInstanceConflict", instance_id, "director",
                subject=subject, address=str(address), boundTo=bound,
            )
            return
        holder = record.registry.get(subject)
        if holder is not None and holder != address:
            # Slot taken: answer only the loser with the current book.
            self.emit(
                "duplicateRegistration", instance_id, "director",
                subject=subject, winner=str(holder), loser=str(address),
            )
            self._send_addressbook(instance_id, record, [address])
            return
        if holder == address:
            # Idempotent re-registration: re-acknowledge, no broadcast.
            self._send_addressbook(instance_id, record, [address])
            return
        record.registry[subject] = address
        self.bound_instance[address] = instance_id
        self.emit(
            "registered", instance_id, "director",
            subject=subject, address=str(address),
        )
        self._send_addressbook(instance_id, record, list(record.registry.values()))

    def _send_addressbook(
        self, instance_id: str, record: InstanceRecord, recipients: list[ActorAddress]
    ) -> None:
        body = {
            "entries": dict(record.registry),
            "ioActors": list(self.io_actors),
        }
        for recipient in recipients:
            self.send(
                recipient,
                EngineMessage(type=ev.ADDRESSBOOK, instance_id=instance_id, body=body),
            )

    # -- deregistration --------------------------------------------------------

    def _on_deregister(self, message: EngineMessage) -> None:
        instance_id = message.instance_id
        record = self.instances.get(instance_id)
        if record is None:
            return
        subject = message.body.get("subject", "")
        holder = record.registry.get(subject)
        if holder is not None and holder == message.sender:
            del record.registry[subject]
            self.bound_instance.pop(message.sender, None)
            self.emit(
                "deregistered", instance_id, "director",
                subject=subject, address=str(message.sender),
            )
