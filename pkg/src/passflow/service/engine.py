"""The runner: administrative boundary between interfaces and the actor runtime.

Owns the model store (source document + compiled artifacts stored side by
side for traceability), instance lifecycle, task brokering, and scripted
deterministic runs.
"""

from __future__ import annotations

import datetime as _dt
import threading
from dataclasses import dataclass, field

from ..bpmn import parse_bpmn
from ..compiler import (
    CompiledModel,
    compile_model,
    serialize_catalog,
    serialize_program,
)
from ..errors import (
    ModelRejected,
    NotFound,
    TaskValidationError,
    UnknownRequestId,
)
from ..passmodel import PassModel, read_owl, validate_pass
from ..runtime import (
    Actor,
    EngineMessage,
    ExecutionTrace,
    InstanceStatus,
    RunConfig,
    Runtime,
)
from ..runtime import envelope as ev
from ..translate import to_simple, translate_to_pass
from .script import InteractionScript

#: model name used when the caller does not provide one
_DEFAULT_NAME = "uploaded-model"


@dataclass
class ModelRecord:
    model_id: str
    name: str
    source_kind: str            # "bpmn" | "owl"
    document: bytes
    pass_model: PassModel
    compiled: CompiledModel
    program_bytes: dict[str, bytes]
    catalog_bytes: bytes
    uploaded_at: str
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "modelId": self.model_id,
            "name": self.name,
            "sourceKind": self.source_kind,
            "subjects": list(self.compiled.programs),
            "uploadedAt": self.uploaded_at,
            "warnings": [
                {"componentId": f.component_id, "rule": f.rule, "message": f.message}
                for f in self.warnings
            ],
        }


@dataclass
class RunResult:
    status: str                 # "completed" | "stalled"
    trace: ExecutionTrace
    pending: list[dict] = field(default_factory=list)
    alive_subjects: list[str] = field(default_factory=list)

    @property
    def completed(self) -> bool:
        return self.status == "completed"


class RunnerActor(Actor):
    """Management-side endpoint the service sends from; absorbs replies."""

    def receive(self, message: EngineMessage) -> None:
        pass


def build_model(document: bytes, kind: str, name: str = ""):
    """Parse + translate + validate + compile one model document.

    An empty ``name`` keeps the document's own name (OWL models carry one;
    BPMN models fall back to a generic one). Raises ModelRejected when
    validation reports errors.
    """
    if kind == "bpmn":
        defs = parse_bpmn(document)
        pass_model = translate_to_pass(to_simple(defs), name=name or _DEFAULT_NAME)
    elif kind == "owl":
        pass_model = read_owl(document)
        if name:
            pass_model.name = name
    else:
        raise ModelRejected(f"unknown model kind '{kind}' (expected bpmn or owl)")
    report = validate_pass(pass_model)
    if not report.ok:
        raise ModelRejected(
            "model fails validation", findings=report.findings
        )
    compiled = compile_model(pass_model)
    return pass_model, compiled, [f for f in report.findings]


class WorkflowEngine:
    def __init__(self, config: RunConfig | None = None):
        self.config = config or RunConfig()
        self.lock = threading.RLock()
        self.runtime = Runtime(self.config)
        self.trace = ExecutionTrace()
        self.runtime.bus.listeners.append(self.trace.add)
        self.runner_address = self.runtime.bus.spawn(
            self.config.management_system, RunnerActor, tag="runner"
        )
        self._models: dict[str, ModelRecord] = {}
        self._model_seq = 0
        self._instance_seq = 0
        self._instance_model: dict[str, str] = {}
        #: pump automatically after mutations (single-threaded embedded mode)
        self.auto_pump = True

    # -- model store -----------------------------------------------------------

    def upload_model(self, document: bytes, kind: str, name: str = "") -> ModelRecord:
        with self.lock:
            self._model_seq += 1
            model_id = f"m-{self._model_seq}"
            pass_model, compiled, findings = build_model(document, kind, name)
            record = ModelRecord(
                model_id=model_id,
                name=pass_model.name,
                source_kind=kind,
                document=bytes(document),
                pass_model=pass_model,
                compiled=compiled,
                program_bytes={
                    sid: serialize_program(p) for sid, p in compiled.programs.items()
                },
                catalog_bytes=serialize_catalog(compiled.catalog),
                uploaded_at=_dt.datetime.now(_dt.timezone.utc).isoformat(),
                warnings=findings,
            )
            self._models[model_id] = record
            return record

    def list_models(self) -> list[ModelRecord]:
        with self.lock:
            return list(self._models.values())

    def get_model(self, model_id: str) -> ModelRecord:
        with self.lock:
            record = self._models.get(model_id)
            if record is None:
                raise NotFound(f"unknown model '{model_id}'")
            return record

    def verify_record(self, model_id: str) -> bool:
        """Stored compiled artifacts must byte-match a fresh compile."""
        record = self.get_model(model_id)
        _, compiled, _ = build_model(record.document, record.source_kind, record.name)
        fresh_programs = {
            sid: serialize_program(p) for sid, p in compiled.programs.items()
        }
        return (
            fresh_programs == record.program_bytes
            and serialize_catalog(compiled.catalog) == record.catalog_bytes
        )

    # -- instances ----------------------------------------------------------------

    def start_instance(self, model_id: str, instance_name: str) -> str:
        with self.lock:
            record = self.get_model(model_id)
            self._instance_seq += 1
            instance_id = f"i-{self._instance_seq}"
            self.runtime.start_instance(record.compiled, instance_id, instance_name)
            self._instance_model[instance_id] = model_id
            self._pump()
            return instance_id

    def stop_instance(self, instance_id: str) -> None:
        with self.lock:
            self.runtime.stop_instance(instance_id)
            self._pump()

    def status(self, instance_id: str) -> InstanceStatus:
        with self.lock:
            return self.runtime.status(instance_id)

    # -- tasks -----------------------------------------------------------------------

    def list_tasks(self, instance_id: str | None = None) -> list[dict]:
        with self.lock:
            return [r.to_json() for r in self.runtime.pending_tasks(instance_id)]

    def complete_task(self, request_id: int, values: dict | None = None,
                      choice: str | None = None) -> None:
        with self.lock:
            pending = {r.request_id: r for r in self.runtime.pending_tasks()}
            request = pending.get(request_id)
            if request is None:
                raise UnknownRequestId(f"no pending interaction request {request_id}")
            clean = _validate_submission(request.form_spec, values or {}, choice)
            self.runtime.bus.post(
                self.runtime.io_address,
                EngineMessage(
                    type=ev.IOCOMPLETE,
                    instance_id=request.instance_id,
                    sender=self.runner_address,
                    body={"requestId": request_id, "values": clean, "choice": choice},
                ),
            )
            self._pump()

    def cancel_task(self, request_id: int) -> None:
        with self.lock:
            pending = {r.request_id: r for r in self.runtime.pending_tasks()}
            if request_id not in pending:
                raise UnknownRequestId(f"no pending interaction request {request_id}")
            self.runtime.bus.post(
                self.runtime.io_address,
                EngineMessage(
                    type=ev.IOCANCEL,
                    instance_id=pending[request_id].instance_id,
                    sender=self.runner_address,
                    body={"requestId": request_id},
                ),
            )
            self._pump()

    # -- pumping ------------------------------------------------------------------------

    def _pump(self) -> None:
        if self.auto_pump:
            self.runtime.bus.deliver_all()

    def pump(self) -> None:
        with self.lock:
            self.runtime.bus.deliver_all()

    def fire_due_timers(self) -> None:
        with self.lock:
            self.runtime.bus.fire_due_timers()
            self.runtime.bus.deliver_all()

    def next_timer_deadline_ms(self):
        return self.runtime.bus.next_deadline_ms()


def _validate_submission(form_spec: dict, values: dict, choice: str | None) -> dict:
    fields = {f["name"]: f for f in form_spec.get("fields", [])}
    editable = {n for n, f in fields.items() if not f.get("readOnly")}
    unknown = set(values) - set(fields)
    if unknown:
        raise TaskValidationError(
            f"values contain unknown fields: {', '.join(sorted(unknown))}"
        )
    missing = editable - set(values)
    if missing:
        raise TaskValidationError(
            f"missing required fields: {', '.join(sorted(missing))}"
        )
    choices = form_spec.get("choices") or []
    if choices:
        if choice is None:
            raise TaskValidationError(
                f"a choice is required: one of {', '.join(choices)}"
            )
        if choice not in choices:
            raise TaskValidationError(
                f"unknown choice '{choice}' (expected one of {', '.join(choices)})"
            )
    elif choice is not None:
        raise TaskValidationError("this task does not take a choice")
    clean = {}
    for name, value in values.items():
        clean[name] = _coerce(fields[name], value)
    return clean


def _coerce(field_spec: dict, value):
    kind = field_spec.get("fieldType", "string")
    name = field_spec["name"]
    if kind == "integer":
        if isinstance(value, bool):
            raise TaskValidationError(f"field '{name}' expects an integer")
        if isinstance(value, int):
            return value
        try:
            return int(str(value).strip())
        except ValueError as exc:
            raise TaskValidationError(f"field '{name}' expects an integer") from exc
    if kind == "date":
        try:
            _dt.date.fromisoformat(str(value))
        except ValueError as exc:
            raise TaskValidationError(
                f"field '{name}' expects an ISO date (YYYY-MM-DD)"
            ) from exc
        return str(value)
    return "" if value is None else str(value)


def run_scripted(
    compiled: CompiledModel,
    script: InteractionScript | None = None,
    *,
    seed: int = 0,
    timer_scale: float = 1.0,
    policy: str = "fifo",
    recursive_exit: bool = False,
    instance_name: str = "scripted",
) -> RunResult:
    """Run one instance to quiescence under a deterministic schedule.

    Pending interactions are answered from the script; the virtual clock only
    advances (firing the next timer) when no script rule applies. The same
    seed and script always produce byte-identical traces.
    """
    script = script or InteractionScript([])
    config = RunConfig(
        seed=seed,
        policy=policy,
        timer_scale=timer_scale,
        recursive_exit=recursive_exit,
    )
    engine = WorkflowEngine(config)
    engine.auto_pump = False
    record = ModelRecord(
        model_id="m-1",
        name=compiled.model_name,
        source_kind="compiled",
        document=b"",
        pass_model=None,
        compiled=compiled,
        program_bytes={},
        catalog_bytes=b"",
        uploaded_at="",
    )
    engine._models["m-1"] = record
    instance_id = engine.start_instance("m-1", instance_name)
    bus = engine.runtime.bus

    while True:
        bus.deliver_all()
        tasks = engine.runtime.pending_tasks(instance_id)
        completed_one = False
        for task in tasks:
            action = script.match(task.context)
            if action is not None:
                engine.complete_task(
                    task.request_id, values=action.values, choice=action.choice
                )
                completed_one = True
                break
        if completed_one:
            continue
        if bus.advance_to_next_timer():
            continue
        break

    registry = engine.runtime.registry_snapshot(instance_id)
    pending = [t.to_json() for t in engine.runtime.pending_tasks(instance_id)]
    completed = not registry and not engine.runtime.instance_alive(instance_id)
    return RunResult(
        status="completed" if completed else "stalled",
        trace=engine.trace,
        pending=pending,
        alive_subjects=sorted(registry),
    )
