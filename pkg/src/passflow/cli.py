"""Command-line entry point.

Exit codes: 0 success, 1 validation failure, 2 usage/IO error, 3 stalled run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import threading
from pathlib import Path

from . import __version__
from .bpmn import parse_bpmn, serialize_bpmn
from .compiler import compile_model, dump_program
from .errors import PassflowError
from .passmodel import read_owl, validate_pass, write_owl
from .passmodel import vocab as _vocab
from .runtime import RunConfig
from .service import InteractionScript, WorkflowEngine, run_scripted
from .service.engine import build_model
from .translate import to_simple, translate_to_bpmn, translate_to_pass

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_STALLED = 3


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.handler(args)
    except PassflowError as exc:
        _fail(args, exc)
        return EXIT_USAGE
    except OSError as exc:
        _fail(args, exc)
        return EXIT_USAGE


def _fail(args, exc: Exception) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}))
    else:
        print(f"error: {exc}", file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="passflow",
        description="Translate process models between BPMN and PASS and execute them.",
    )
    parser.add_argument("--version", action="version", version=f"passflow {__version__}")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("translate", help="translate between bpmn and owl files")
    p.add_argument("input", type=Path)
    p.add_argument("output", type=Path)
    p.add_argument("--from", dest="source_kind", choices=("bpmn", "owl"))
    p.add_argument("--to", dest="target_kind", choices=("bpmn", "owl"), required=True)
    p.add_argument("--name", default="", help="model name used in the output")
    p.add_argument(
        "--base-iri",
        default=os.environ.get("PASSFLOW_BASE_IRI", _vocab.DEFAULT_BASE_IRI),
        help="base IRI for emitted OWL individuals (env: PASSFLOW_BASE_IRI)",
    )
    p.add_argument("--json", action="store_true", help="machine-parseable output")
    p.set_defaults(handler=_cmd_translate)

    p = sub.add_parser("validate", help="validate a model and list findings")
    p.add_argument("input", type=Path)
    p.add_argument("--from", dest="source_kind", choices=("bpmn", "owl"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("run", help="execute a model with a scripted user")
    p.add_argument("input", type=Path)
    p.add_argument("--script", type=Path, help="JSON interaction script")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timer-scale", type=float, default=1.0)
    p.add_argument("--policy", choices=("fifo", "random"), default="fifo")
    p.add_argument("--trace", type=Path, help="write the execution trace (JSONL)")
    p.add_argument("--name", default="", help="instance name")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_run)

    p = sub.add_parser("dump", help="print compiled behavior programs")
    p.add_argument("input", type=Path)
    p.add_argument("--subject", default="", help="dump one subject only")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_dump)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8440)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument(
        "--base-iri",
        default=os.environ.get("PASSFLOW_BASE_IRI", _vocab.DEFAULT_BASE_IRI),
    )
    p.add_argument("--data-dir", type=Path, help="persist uploaded documents here")
    p.add_argument("--ui", type=Path, help="serve the web interface from this directory")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_serve)
    return parser


def _detect_kind(path: Path, explicit: str | None) -> str:
    if explicit:
        return explicit
    suffix = path.suffix.lower().lstrip(".")
    if suffix in ("bpmn", "xml"):
        return "bpmn"
    if suffix in ("owl", "rdf", "rdfxml"):
        return "owl"
    raise PassflowError(
        f"cannot infer model kind from '{path.name}'; pass --from bpmn|owl"
    )


def _load_pass_model(path: Path, kind: str, name: str = ""):
    document = path.read_bytes()
    if kind == "bpmn":
        model = translate_to_pass(
            to_simple(parse_bpmn(document)), name=name or path.stem
        )
    else:
        model = read_owl(document)
        if name:
            model.name = name
    return model


def _print_findings(args, findings) -> None:
    if args.json:
        print(
            json.dumps(
                [
                    {
                        "severity": f.severity,
                        "componentId": f.component_id,
                        "rule": f.rule,
                        "message": f.message,
                    }
                    for f in findings
                ]
            )
        )
    else:
        for f in findings:
            print(f"{f.severity}: [{f.rule}] {f.component_id}: {f.message}")


def _cmd_translate(args) -> int:
    kind = _detect_kind(args.input, args.source_kind)
    model = _load_pass_model(args.input, kind, args.name)
    report = validate_pass(model)
    _print_findings(args, report.findings)
    if not report.ok:
        return EXIT_VALIDATION
    if args.target_kind == "owl":
        args.output.write_bytes(write_owl(model, base_iri=args.base_iri))
    else:
        args.output.write_bytes(serialize_bpmn(translate_to_bpmn(model)))
    if not args.json:
        print(f"wrote {args.output}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    kind = _detect_kind(args.input, args.source_kind)
    model = _load_pass_model(args.input, kind)
    report = validate_pass(model)
    _print_findings(args, report.findings)
    return EXIT_OK if report.ok else EXIT_VALIDATION


def _cmd_run(args) -> int:
    kind = _detect_kind(args.input, None)
    document = args.input.read_bytes()
    _, compiled, _ = build_model(document, kind, args.input.stem)
    script = InteractionScript.from_path(args.script) if args.script else None
    result = run_scripted(
        compiled,
        script,
        seed=args.seed,
        timer_scale=args.timer_scale,
        policy=args.policy,
        instance_name=args.name or args.input.stem,
    )
    if args.trace:
        args.trace.write_bytes(result.trace.to_jsonl())
    if args.json:
        print(
            json.dumps(
                {
                    "status": result.status,
                    "events": len(result.trace),
                    "pending": result.pending,
                    "aliveSubjects": result.alive_subjects,
                }
            )
        )
    else:
        print(f"run {result.status} after {len(result.trace)} trace events")
        for task in result.pending:
            context = task.get("context", {})
            print(
                f"  pending: {context.get('subjectLabel')} / {context.get('stateLabel')}"
                f" (request {task.get('requestId')})"
            )
    return EXIT_OK if result.completed else EXIT_STALLED


def _cmd_dump(args) -> int:
    kind = _detect_kind(args.input, None)
    model = _load_pass_model(args.input, kind)
    compiled = compile_model(model)
    for subject_id, program in compiled.programs.items():
        if args.subject and subject_id != args.subject:
            continue
        sys.stdout.write(dump_program(program))
    return EXIT_OK


def _cmd_serve(args) -> int:
    import socket

    import uvicorn

    from .service.http import build_app

    with socket.socket(socket.AF_INET, socket.SOCK_STREAM) as probe:
        try:
            probe.bind((args.host, args.port))
        except OSError as exc:
            _fail(args, exc)
            return EXIT_USAGE

    config = RunConfig(virtual_clock=False)
    engine = WorkflowEngine(config)
    engine.auto_pump = True
    if args.data_dir:
        args.data_dir.mkdir(parents=True, exist_ok=True)
        original_upload = engine.upload_model

        def saving_upload(document: bytes, kind: str, name: str = ""):
            record = original_upload(document, kind, name)
            suffix = "bpmn" if kind == "bpmn" else "owl"
            (args.data_dir / f"{record.model_id}.{suffix}").write_bytes(document)
            return record

        engine.upload_model = saving_upload

    stop = threading.Event()

    def pump_loop():
        while not stop.is_set():
            engine.pump()
            deadline = engine.next_timer_deadline_ms()
            if deadline is not None:
                now = engine.runtime.bus.clock.now_ms()
                stop.wait(max(0.0, (deadline - now) / 1000) or 0.01)
                engine.fire_due_timers()
            else:
                stop.wait(0.05)

    pump = threading.Thread(target=pump_loop, name="passflow-pump", daemon=True)
    pump.start()
    app = build_app(engine, static_dir=str(args.ui) if args.ui else None)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    finally:
        stop.set()
        pump.join(timeout=2)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
