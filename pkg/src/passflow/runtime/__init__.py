from .address import ActorAddress
from .actor import ProcessActor, placeholder_for
from .bus import Actor, MessageBus
from .clock import VirtualClock, WallClock
from .director import DirectorActor, InstanceRecord
from .envelope import EngineMessage, from_wire, to_wire
from .io_actor import IoActor, PendingRequest
from .system import InstanceStatus, RunConfig, Runtime, SubjectStatus
from .trace import (
    ACTOR_EXITED,
    MESSAGE_RECEIVED,
    MESSAGE_SENT,
    STATE_ENTERED,
    TIMER_FIRED,
    TRACE_EVENTS,
    ExecutionTrace,
    TraceEvent,
)

__all__ = [
    "ACTOR_EXITED",
    "Actor",
    "ActorAddress",
    "DirectorActor",
    "EngineMessage",
    "ExecutionTrace",
    "InstanceRecord",
    "InstanceStatus",
    "IoActor",
    "MESSAGE_RECEIVED",
    "MESSAGE_SENT",
    "MessageBus",
    "PendingRequest",
    "ProcessActor",
    "RunConfig",
    "Runtime",
    "STATE_ENTERED",
    "SubjectStatus",
    "TIMER_FIRED",
    "TRACE_EVENTS",
    "TraceEvent",
    "VirtualClock",
    "WallClock",
    "from_wire",
    "placeholder_for",
    "to_wire",
]
