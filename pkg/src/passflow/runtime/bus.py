"""In-process message bus: mailboxes, scheduling policies, timers, tracing.

Actors share nothing and interact only through messages delivered here, one
at a time. Delivery order is controlled by a policy:

- ``fifo``: global arrival order (the hand-derivable deterministic mode);
- ``random``: a seeded RNG picks among the per-(sender, target) channel
  heads, preserving per-sender-pair FIFO while exploring interleavings.

Named actor systems share this one bus; a message crossing system boundaries
is routed through the JSON wire codec, so the documented envelope format is
exercised by every management/server interaction.
"""

from __future__ import annotations

import heapq
import logging
import random
import threading
from dataclasses import dataclass
from typing import Callable

from ..errors import PlacementError
from .address import ActorAddress
from .clock import VirtualClock
from .envelope import WAKEUP, EngineMessage, from_wire, to_wire
from .trace import TraceEvent, log_event

logger = logging.getLogger(__name__)


class Actor:
    """Base class for runtime actors; subclasses implement ``receive``."""

    def __init__(self, address: ActorAddress, bus: "MessageBus"):
        self.address = address
        self.bus = bus

    def receive(self, message: EngineMessage) -> None:  # pragma: no cover
        raise NotImplementedError

    # -- conveniences ------------------------------------------------------

    def send(self, target: ActorAddress, message: EngineMessage) -> None:
        message.sender = self.address
        self.bus.post(target, message)

    def emit(self, event: str, instance_id: str, subject: str, /, **detail) -> None:
        self.bus.emit(event, instance_id, subject, **detail)


@dataclass
class _Delivery:
    seq: int
    target: ActorAddress
    message: EngineMessage


class MessageBus:
    def __init__(
        self,
        *,
        systems: tuple[str, ...] = ("management", "server"),
        seed: int = 0,
        policy: str = "fifo",
        clock=None,
        wire_bridge: bool = True,
        max_steps: int = 1_000_000,
    ):
        if policy not in ("fifo", "random"):
            raise ValueError(f"unknown scheduling policy {policy!r}")
        self.systems = tuple(systems)
        self.policy = policy
        self.rng = random.Random(seed)
        self.clock = clock or VirtualClock()
        self.wire_bridge = wire_bridge
        self.max_steps = max_steps
        self.lock = threading.RLock()
        self.actors: dict[ActorAddress, Actor] = {}
        self.redirects: dict[ActorAddress, ActorAddress] = {}
        self.pending: list[_Delivery] = []
        self.timers: list[tuple[int, int, ActorAddress, str]] = []  # heap
        self._serial = 0
        self._seq = 0
        self.listeners: list[Callable[[TraceEvent], None]] = []
        self.steps = 0
        self.spawn_count: dict[str, int] = {}

    # -- actor lifecycle ---------------------------------------------------

    def spawn(self, system: str, factory: Callable[[ActorAddress, "MessageBus"], Actor],
              tag: str = "") -> ActorAddress:
        with self.lock:
            if system not in self.systems:
                raise PlacementError(
                    f"actor system '{system}' is not reachable "
                    f"(configured: {', '.join(self.systems)})"
                )
            self._serial += 1
            address = ActorAddress(system=system, serial=self._serial)
            self.actors[address] = factory(address, self)
            if tag:
                self.spawn_count[tag] = self.spawn_count.get(tag, 0) + 1
            return address

    def terminate(self, address: ActorAddress, redirect_to: ActorAddress | None = None) -> None:
        """Remove an actor. With ``redirect_to``, queued and future messages
        for this address are re-targeted (used by duplicate losers so nothing
        addressed to them during the discovery race is lost)."""
        with self.lock:
            self.actors.pop(address, None)
            self.timers = [t for t in self.timers if t[2] != address]
            heapq.heapify(self.timers)
            if redirect_to is not None:
                self.redirects[address] = redirect_to

    def _resolve_target(self, address: ActorAddress) -> ActorAddress:
        hops = 0
        while address in self.redirects and hops < 8:
            address = self.redirects[address]
            hops += 1
        return address

    def is_alive(self, address: ActorAddress) -> bool:
        return address in self.actors

    # -- messaging ---------------------------------------------------------

    def post(self, target: ActorAddress, message: EngineMessage) -> None:
        with self.lock:
            self._seq += 1
            self.pending.append(_Delivery(self._seq, target, message))

    def schedule_wakeup(self, target: ActorAddress, delay_ms: int, token: str,
                        instance_id: str) -> None:
        with self.lock:
            self._seq += 1
            deadline = self.clock.now_ms() + max(0, delay_ms)
            heapq.heappush(self.timers, (deadline, self._seq, target, f"{instance_id}|{token}"))

    def emit(self, event: str, instance_id: str, subject: str, /, **detail) -> None:
        trace_event = TraceEvent(
            ts=self.clock.now_ms(),
            instance_id=instance_id,
            subject=subject,
            event=event,
            detail=tuple(sorted(detail.items())),
        )
        log_event(trace_event)
        for listener in self.listeners:
            listener(trace_event)

    # -- scheduling --------------------------------------------------------

    def _pick_index(self) -> int:
        if self.policy == "fifo" or len(self.pending) == 1:
            return 0
        heads: dict[tuple, int] = {}
        for idx, d in enumerate(self.pending):
            key = (d.message.sender, d.target)
            if key not in heads:
                heads[key] = idx
        choices = sorted(heads.values())
        return self.rng.choice(choices)

    def deliver_one(self) -> bool:
        with self.lock:
            if not self.pending:
                return False
            delivery = self.pending.pop(self._pick_index())
        self.steps += 1
        if self.steps > self.max_steps:
            raise RuntimeError("message loop exceeded step budget; livelock?")
        message = delivery.message
        sender = message.sender
        target = self._resolve_target(delivery.target)
        if (
            self.wire_bridge
            and sender is not None
            and sender.system != target.system
        ):
            message = from_wire(to_wire(message))
        actor = self.actors.get(target)
        if actor is None:
            self.emit(
                "deadLetter",
                message.instance_id,
                "bus",
                target=str(target),
                type=message.type,
            )
            return True
        actor.receive(message)
        return True

    def deliver_all(self) -> int:
        count = 0
        while self.deliver_one():
            count += 1
        return count

    # -- timers ------------------------------------------------------------

    def has_timers(self) -> bool:
        return bool(self.timers)

    def next_deadline_ms(self) -> int | None:
        with self.lock:
            return self.timers[0][0] if self.timers else None

    def fire_due_timers(self) -> int:
        """Enqueue wakeups for every timer due at or before the current time."""
        fired = 0
        with self.lock:
            now = self.clock.now_ms()
            while self.timers and self.timers[0][0] <= now:
                _, _, target, token = heapq.heappop(self.timers)
                instance_id, _, bare = token.partition("|")
                self.post(target, EngineMessage(
                    type=WAKEUP, instance_id=instance_id, body={"token": bare}
                ))
                fired += 1
        return fired

    def advance_to_next_timer(self) -> int:
        """Virtual mode: jump the clock to the earliest deadline and fire."""
        deadline = self.next_deadline_ms()
        if deadline is None:
            return 0
        self.clock.advance_to(deadline)
        return self.fire_due_timers()

    def run_until_quiescent(self) -> None:
        """Drain deliveries; when idle, advance the virtual clock to hop over
        waiting timers. Stops when no deliveries and no timers remain."""
        while True:
            self.deliver_all()
            if not self.advance_to_next_timer():
                return
