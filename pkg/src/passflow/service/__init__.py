from .engine import (
    ModelRecord,
    RunResult,
    WorkflowEngine,
    build_model,
    run_scripted,
)
from .script import InteractionScript, ScriptAction, ScriptRule

__all__ = [
    "InteractionScript",
    "ModelRecord",
    "RunResult",
    "ScriptAction",
    "ScriptRule",
    "WorkflowEngine",
    "build_model",
    "run_scripted",
]
