"""Engine message envelope and its JSON wire codec.

Every message carries a type key, the instance id (empty only for system
bootstrap traffic), and the sender address. Bodies are JSON-compatible
dictionaries; values that are actor addresses encode as
``{"system": ..., "serial": ...}`` objects. The schema is documented in
docs/envelope.schema.json and messages crossing actor-system boundaries go
through this codec.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from ..errors import DecodeError
from .address import ActorAddress

# Message type keys.
REGISTER = "register"
DEREGISTER = "deregister"
ADDRESSBOOK = "addressbook"
INIT = "init"
PROCESS = "process"
IOREQUEST = "iorequest"
IOACK = "ioack"
IOCOMPLETE = "iocomplete"
IOCANCEL = "iocancel"
WAKEUP = "wakeup"
EXIT = "exit"
INTERNAL = "internal"

ALL_TYPES = (
    REGISTER,
    DEREGISTER,
    ADDRESSBOOK,
    INIT,
    PROCESS,
    IOREQUEST,
    IOACK,
    IOCOMPLETE,
    IOCANCEL,
    WAKEUP,
    EXIT,
    INTERNAL,
)


@dataclass
class EngineMessage:
    type: str
    instance_id: str = ""
    sender: ActorAddress | None = None
    body: dict = field(default_factory=dict)


def _encode_value(value):
    if isinstance(value, ActorAddress):
        return value.to_json()
    if isinstance(value, dict):
        return {k: _encode_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_encode_value(v) for v in value]
    return value


def _decode_value(value):
    if isinstance(value, dict):
        if set(value.keys()) == {"system", "serial"}:
            return ActorAddress.from_json(value)
        return {k: _decode_value(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_decode_value(v) for v in value]
    return value


def to_wire(message: EngineMessage) -> bytes:
    return json.dumps(
        {
            "type": message.type,
            "instanceId": message.instance_id,
            "sender": message.sender.to_json() if message.sender else None,
            "body": _encode_value(message.body),
        },
        sort_keys=True,
        separators=(",", ":"),
        ensure_ascii=False,
    ).encode("utf-8")


def from_wire(data: bytes) -> EngineMessage:
    try:
        doc = json.loads(data.decode("utf-8"))
        if doc["type"] not in ALL_TYPES:
            raise DecodeError(f"unknown message type {doc['type']!r}")
        sender = ActorAddress.from_json(doc["sender"]) if doc["sender"] else None
        return EngineMessage(
            type=doc["type"],
            instance_id=doc["instanceId"],
            sender=sender,
            body=_decode_value(doc["body"]),
        )
    except DecodeError:
        raise
    except (KeyError, TypeError, ValueError, UnicodeDecodeError) as exc:
        raise DecodeError(f"malformed engine message: {exc}") from exc
