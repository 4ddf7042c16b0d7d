"""The IO actor: broker between process actors and user interfaces.

It holds two maps keyed by a monotonically increasing request id: the form
specification (plus context) shown to interfaces, and the address of the
requesting actor. Completing a request forwards the values to the requester
and deletes it; served or cancelled ids are never reused.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import envelope as ev
from .address import ActorAddress
from .bus import Actor, MessageBus
from .envelope import EngineMessage


@dataclass(frozen=True)
class PendingRequest:
    request_id: int
    instance_id: str
    form_spec: dict
    context: dict
    requester: ActorAddress

    def to_json(self) -> dict:
        return {
            "requestId": self.request_id,
            "instanceId": self.instance_id,
            "formSpec": self.form_spec,
            "context": self.context,
        }


class IoActor(Actor):
    def __init__(self, address: ActorAddress, bus: MessageBus):
        super().__init__(address, bus)
        self._counter = 0
        self.requests: dict[int, PendingRequest] = {}

    def receive(self, message: EngineMessage) -> None:
        if message.type == ev.IOREQUEST:
            self._on_request(message)
        elif message.type == ev.IOCOMPLETE:
            self._on_complete(message)
        elif message.type == ev.IOCANCEL:
            self._on_cancel(message)
        else:
            self.emit("ioIgnored", message.instance_id, "io", type=message.type)

    def pending(self, instance_id: str | None = None) -> list[PendingRequest]:
        """Snapshot of open requests, oldest first."""
        return [
            r
            for rid, r in sorted(self.requests.items())
            if instance_id is None or r.instance_id == instance_id
        ]

    def _on_request(self, message: EngineMessage) -> None:
        self._counter += 1
        request = PendingRequest(
            request_id=self._counter,
            instance_id=message.instance_id,
            form_spec=message.body.get("formSpec", {}),
            context=message.body.get("context", {}),
            requester=message.sender,
        )
        self.requests[request.request_id] = request
        self.emit(
            "ioRequested",
            message.instance_id,
            "io",
            requestId=request.request_id,
            subjectLabel=request.context.get("subjectLabel", ""),
            stateLabel=request.context.get("stateLabel", ""),
        )
        self.send(
            message.sender,
            EngineMessage(
                type=ev.IOACK,
                instance_id=message.instance_id,
                body={"requestId": request.request_id},
            ),
        )

    def _on_complete(self, message: EngineMessage) -> None:
        request_id = message.body.get("requestId")
        request = self.requests.pop(request_id, None)
        if request is None:
            self.emit(
                "ioUnknownRequest", message.instance_id, "io", requestId=request_id or -1
            )
            return
        self.emit("ioCompleted", request.instance_id, "io", requestId=request.request_id)
        self.send(
            request.requester,
            EngineMessage(
                type=ev.IOCOMPLETE,
                instance_id=request.instance_id,
                body={
                    "requestId": request.request_id,
                    "values": message.body.get("values", {}),
                    "choice": message.body.get("choice"),
                },
            ),
        )

    def _on_cancel(self, message: EngineMessage) -> None:
        if message.body.get("all"):
            doomed = [
                rid
                for rid, r in self.requests.items()
                if r.requester == message.sender
            ]
        else:
            doomed = [message.body.get("requestId")]
        for rid in doomed:
            request = self.requests.pop(rid, None)
            if request is not None:
                self.emit("ioCancelled", request.instance_id, "io", requestId=rid)
