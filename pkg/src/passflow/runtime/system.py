"""Runtime facade: wires the bus, director, and IO actor together and owns
instance lifecycle (start, stop, status snapshots)."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..compiler import CompiledModel
from ..errors import DuplicateInstance, NoStartSubject, NotFound
from . import envelope as ev
from .actor import ProcessActor
from .address import ActorAddress
from .bus import MessageBus
from .clock import VirtualClock, WallClock
from .director import DirectorActor, InstanceRecord
from .envelope import EngineMessage
from .io_actor import IoActor
from .trace import STATE_ENTERED, TraceEvent


@dataclass
class RunConfig:
    seed: int = 0
    policy: str = "fifo"          # "fifo" | "random"
    timer_scale: float = 1.0
    #: propagate an actor's end-state exit to the actors it created; off by
    #: default to keep subjects independent of their creator's lifetime
    recursive_exit: bool = False
    virtual_clock: bool = True
    management_system: str = "management"
    default_system: str = "server"
    extra_systems: tuple[str, ...] = ()


@dataclass
class SubjectStatus:
    subject: str
    current_state_label: str
    alive: bool


@dataclass
class InstanceStatus:
    instance_id: str
    instance_name: str
    model_name: str
    completed: bool
    subjects: list[SubjectStatus] = field(default_factory=list)


class Runtime:
    def __init__(self, config: RunConfig | None = None):
        self.config = config or RunConfig()
        clock = VirtualClock() if self.config.virtual_clock else WallClock()
        systems = tuple(
            dict.fromkeys(
                (self.config.management_system, self.config.default_system)
                + tuple(self.config.extra_systems)
            )
        )
        self.bus = MessageBus(
            systems=systems,
            seed=self.config.seed,
            policy=self.config.policy,
            clock=clock,
        )
        self.bus.listeners.append(self._observe)
        self.director_address = self.bus.spawn(
            self.config.management_system, DirectorActor, tag="director"
        )
        self.io_address = self.bus.spawn(self.config.management_system, IoActor, tag="io")
        self.director: DirectorActor = self.bus.actors[self.director_address]
        self.io: IoActor = self.bus.actors[self.io_address]
        self.director.io_actors = [self.io_address]
        self._models: dict[str, CompiledModel] = {}
        #: (instance, subject) -> label of the last state entered
        self._last_state: dict[tuple[str, str], str] = {}
        #: subject component id -> display label, per instance
        self._labels: dict[str, dict[str, str]] = {}
        #: every actor address ever spawned for an instance
        self._instance_actors: dict[str, list[ActorAddress]] = {}

    # -- lifecycle ------------------------------------------------------------

    def start_instance(
        self, compiled: CompiledModel, instance_id: str, instance_name: str
    ) -> list[str]:
        if instance_id in self._models:
            raise DuplicateInstance(f"instance '{instance_id}' already exists")
        starts = [p for p in compiled.programs.values() if p.is_start_subject]
        if not starts:
            raise NoStartSubject(
                f"model '{compiled.model_name}' has no start subject"
            )
        self._models[instance_id] = compiled
        self._labels[instance_id] = {
            p.subject_id: p.subject_label for p in compiled.programs.values()
        }
        self.director.instances[instance_id] = InstanceRecord(
            instance_name=instance_name, model_name=compiled.model_name
        )
        started = []
        for program in starts:
            address = self.spawn_subject(instance_id, program.subject_id)
            init = EngineMessage(
                type=ev.INIT,
                instance_id=instance_id,
                sender=self.director_address,
                body={
                    "subject": program.subject_id,
                    "instanceName": instance_name,
                    "modelName": compiled.model_name,
                    "director": self.director_address,
                    "ioActors": [self.io_address],
                    "recursiveExit": self.config.recursive_exit,
                    "timerScale": self.config.timer_scale,
                },
            )
            self.bus.post(address, init)
            started.append(program.subject_id)
        return started

    def spawn_subject(self, instance_id: str, subject: str) -> ActorAddress:
        compiled = self._models[instance_id]
        program = compiled.programs[subject]
        address = self.bus.spawn(
            program.target_system,
            lambda address, bus: ProcessActor(
                address,
                bus,
                program,
                compiled.catalog,
                spawner=lambda name, iid=instance_id: self.spawn_subject(iid, name),
            ),
            tag=f"{instance_id}:{subject}",
        )
        self._instance_actors.setdefault(instance_id, []).append(address)
        return address

    def instance_alive(self, instance_id: str) -> bool:
        """True while any actor ever spawned for the instance is still live."""
        return any(
            self.bus.is_alive(address)
            for address in self._instance_actors.get(instance_id, ())
        )

    def stop_instance(self, instance_id: str) -> None:
        record = self.director.instances.get(instance_id)
        if record is None:
            raise NotFound(f"unknown instance '{instance_id}'")
        for address in list(record.registry.values()):
            message = EngineMessage(
                type=ev.EXIT,
                instance_id=instance_id,
                sender=self.director_address,
                body={"recursive": False},
            )
            self.bus.post(address, message)
        record.finished = True

    # -- snapshots --------------------------------------------------------------

    def status(self, instance_id: str) -> InstanceStatus:
        record = self.director.instances.get(instance_id)
        if record is None:
            raise NotFound(f"unknown instance '{instance_id}'")
        labels = self._labels.get(instance_id, {})
        subjects = []
        for subject, label in labels.items():
            subjects.append(
                SubjectStatus(
                    subject=label,
                    current_state_label=self._last_state.get(
                        (instance_id, subject), ""
                    ),
                    alive=subject in record.registry,
                )
            )
        subjects.sort(key=lambda s: s.subject)
        return InstanceStatus(
            instance_id=instance_id,
            instance_name=record.instance_name,
            model_name=record.model_name,
            completed=not record.registry and not self.instance_alive(instance_id),
            subjects=subjects,
        )

    def registry_snapshot(self, instance_id: str) -> dict[str, ActorAddress]:
        record = self.director.instances.get(instance_id)
        return dict(record.registry) if record else {}

    def pending_tasks(self, instance_id: str | None = None):
        return self.io.pending(instance_id)

    def _observe(self, event: TraceEvent) -> None:
        if event.event == STATE_ENTERED:
            detail = dict(event.detail)
            self._last_state[(event.instance_id, event.subject)] = detail.get(
                "label", detail.get("state", "")
            )
