from .build import compile_model
from .codec import (
    deserialize_catalog,
    deserialize_program,
    dump_program,
    serialize_catalog,
    serialize_program,
)
from .program import (
    BehaviorProgram,
    CatalogEntry,
    CompiledModel,
    CompiledState,
    FormField,
    InteractionEffect,
    MessageCatalog,
    SendEffect,
    Trigger,
    TriggerKind,
)

__all__ = [
    "BehaviorProgram",
    "CatalogEntry",
    "CompiledModel",
    "CompiledState",
    "FormField",
    "InteractionEffect",
    "MessageCatalog",
    "SendEffect",
    "Trigger",
    "TriggerKind",
    "compile_model",
    "deserialize_catalog",
    "deserialize_program",
    "dump_program",
    "serialize_catalog",
    "serialize_program",
]
