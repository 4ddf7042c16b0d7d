"""HTTP+JSON API over the workflow engine.

Routes:

- ``GET  /health``
- ``POST /models``                 multipart (file, kind) or raw body with
                                   ``?kind=`` and ``?name=``; admin only
- ``GET  /models``
- ``POST /models/{id}/instances``  body ``{"name": ...}``
- ``DELETE /instances/{id}``
- ``GET  /instances/{id}/status``
- ``GET  /tasks?instance=``
- ``POST /tasks/{id}/complete``    body ``{"values": {...}, "choice": ...}``

Roles are a static two-role scheme carried in the ``X-Role`` header
(``admin`` or ``user``, default ``user``); uploading models requires admin.
"""

from __future__ import annotations

from email.message import Message
from email.parser import BytesParser
from email.policy import HTTP

from fastapi import FastAPI, Request, Response
from fastapi.responses import FileResponse, JSONResponse

from ..errors import (
    ModelRejected,
    NotFound,
    PassflowError,
    TaskValidationError,
    UnknownRequestId,
)
from .engine import WorkflowEngine


def _error(status: int, exc: Exception) -> JSONResponse:
    payload = {"error": type(exc).__name__, "detail": str(exc)}
    if isinstance(exc, ModelRejected):
        payload["findings"] = [
            {
                "severity": f.severity,
                "componentId": f.component_id,
                "rule": f.rule,
                "message": f.message,
            }
            for f in exc.findings
        ]
    return JSONResponse(status_code=status, content=payload)


def _parse_multipart(content_type: str, body: bytes) -> dict[str, tuple[str, bytes]]:
    """Parse multipart/form-data into name -> (filename, content)."""
    parser = BytesParser(policy=HTTP)
    message: Message = parser.parsebytes(
        f"Content-Type: {content_type}\r\n\r\n".encode("latin-1") + body
    )
    parts: dict[str, tuple[str, bytes]] = {}
    if message.is_multipart():
        for part in message.iter_parts():
            name = part.get_param("name", header="content-disposition")
            if not name:
                continue
            filename = part.get_filename() or ""
            payload = part.get_payload(decode=True) or b""
            parts[name] = (filename, payload)
    return parts


def build_app(engine: WorkflowEngine, *, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="passflow", docs_url=None, redoc_url=None)

    def role_of(request: Request) -> str:
        return request.headers.get("x-role", "user").strip().lower() or "user"

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/models")
    async def upload_model(request: Request):
        if role_of(request) != "admin":
            return JSONResponse(
                status_code=403,
                content={"error": "Forbidden", "detail": "uploading models requires the admin role"},
            )
        body = await request.body()
        content_type = request.headers.get("content-type", "")
        kind = request.query_params.get("kind", "")
        name = request.query_params.get("name", "")
        document = body
        if content_type.startswith("multipart/form-data"):
            parts = _parse_multipart(content_type, body)
            if "file" not in parts:
                return _error(400, ModelRejected("multipart upload needs a 'file' part"))
            filename, document = parts["file"]
            if "kind" in parts:
                kind = parts["kind"][1].decode("utf-8").strip()
            if "name" in parts:
                name = parts["name"][1].decode("utf-8").strip()
            if not name and filename:
                name = filename.rsplit("/", 1)[-1].rsplit(".", 1)[0]
            if not kind and filename:
                suffix = filename.rsplit(".", 1)[-1].lower()
                kind = {"bpmn": "bpmn", "xml": "bpmn", "owl": "owl", "rdf": "owl"}.get(
                    suffix, ""
                )
        if not kind:
            return _error(400, ModelRejected("model kind missing (bpmn or owl)"))
        try:
            record = engine.upload_model(document, kind, name)
        except ModelRejected as exc:
            return _error(400, exc)
        except PassflowError as exc:
            return _error(400, exc)
        return JSONResponse(status_code=201, content=record.to_json())

    @app.get("/models")
    def list_models():
        return [record.to_json() for record in engine.list_models()]

    @app.post("/models/{model_id}/instances")
    async def start_instance(model_id: str, request: Request):
        doc = await _json_body(request)
        name = str(doc.get("name", "")) if isinstance(doc, dict) else ""
        try:
            instance_id = engine.start_instance(model_id, name or model_id)
        except NotFound as exc:
            return _error(404, exc)
        return JSONResponse(status_code=201, content={"instanceId": instance_id})

    @app.delete("/instances/{instance_id}")
    def stop_instance(instance_id: str):
        try:
            engine.stop_instance(instance_id)
        except NotFound as exc:
            return _error(404, exc)
        return Response(status_code=204)

    @app.get("/instances/{instance_id}/status")
    def status(instance_id: str):
        try:
            snapshot = engine.status(instance_id)
        except NotFound as exc:
            return _error(404, exc)
        return {
            "instanceId": snapshot.instance_id,
            "name": snapshot.instance_name,
            "modelName": snapshot.model_name,
            "completed": snapshot.completed,
            "subjects": [
                {
                    "subject": s.subject,
                    "currentStateLabel": s.current_state_label,
                    "alive": s.alive,
                }
                for s in snapshot.subjects
            ],
        }

    @app.get("/tasks")
    def tasks(instance: str | None = None):
        return engine.list_tasks(instance)

    @app.post("/tasks/{request_id}/complete")
    async def complete_task(request_id: int, request: Request):
        doc = await _json_body(request)
        values = doc.get("values") or {}
        choice = doc.get("choice")
        try:
            engine.complete_task(request_id, values=values, choice=choice)
        except UnknownRequestId as exc:
            return _error(404, exc)
        except TaskValidationError as exc:
            return _error(400, exc)
        return {"status": "completed", "requestId": request_id}

    if static_dir:
        from pathlib import Path

        root = Path(static_dir)

        @app.get("/")
        def index():
            return FileResponse(root / "index.html")

        @app.get("/ui/{path:path}")
        def ui_assets(path: str):
            target = (root / path).resolve()
            if not str(target).startswith(str(root.resolve())) or not target.is_file():
                return Response(status_code=404)
            return FileResponse(target)

    return app


async def _json_body(request: Request) -> dict:
    try:
        doc = await request.json()
        return doc if isinstance(doc, dict) else {}
    except Exception:
        return {}
