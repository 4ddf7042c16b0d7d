"""Execution traces and the structured event stream.

The runtime emits one event per observable step. Five kinds form the public
execution trace asserted by tests and written by scripted runs; everything
else is diagnostic and goes to the structured log only.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

STATE_ENTERED = "stateEntered"
MESSAGE_SENT = "messageSent"
MESSAGE_RECEIVED = "messageReceived"
TIMER_FIRED = "timerFired"
ACTOR_EXITED = "actorExited"

TRACE_EVENTS = {
    STATE_ENTERED,
    MESSAGE_SENT,
    MESSAGE_RECEIVED,
    TIMER_FIRED,
    ACTOR_EXITED,
}

logger = logging.getLogger("passflow.engine")


@dataclass(frozen=True)
class TraceEvent:
    ts: int
    instance_id: str
    subject: str
    event: str
    detail: tuple[tuple[str, object], ...] = ()

    def to_json(self) -> dict:
        return {
            "ts": self.ts,
            "instanceId": self.instance_id,
            "subject": self.subject,
            "event": self.event,
            "detail": dict(self.detail),
        }


@dataclass
class ExecutionTrace:
    events: list[TraceEvent] = field(default_factory=list)

    def add(self, event: TraceEvent) -> None:
        if event.event in TRACE_EVENTS:
            self.events.append(event)

    def to_jsonl(self) -> bytes:
        lines = [
            json.dumps(e.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
            for e in self.events
        ]
        return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""

    def summary(self) -> list[tuple]:
        """Compact (event, subject, key detail) view used in assertions."""
        out = []
        for e in self.events:
            detail = dict(e.detail)
            key = detail.get("state") or detail.get("exchange") or ""
            out.append((e.event, e.subject, key))
        return out

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)


def log_event(event: TraceEvent) -> None:
    """Emit an event as one JSON object per line on the engine logger."""
    logger.info("%s", json.dumps(event.to_json(), sort_keys=True, ensure_ascii=False))
