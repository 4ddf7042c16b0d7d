"""Exception hierarchy shared across the package.

Every error raised by passflow derives from :class:`PassflowError` so callers
(CLI, HTTP layer) can map failures to exit codes / status codes uniformly.
"""

from __future__ import annotations


class PassflowError(Exception):
    """Base class for all passflow errors."""


# --- BPMN reading/writing ---------------------------------------------------


class MalformedXml(PassflowError):
    """Input is not parseable XML or not a BPMN 2.0 definitions document."""


class UnsupportedElement(PassflowError):
    """A flow-node kind (or event definition) outside the supported subset.

    Carries the offending element id and kind so tooling can point at it.
    """

    def __init__(self, element_id: str, kind: str, detail: str = ""):
        self.element_id = element_id
        self.kind = kind
        msg = f"unsupported element '{element_id}' of kind '{kind}'"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class StructuralError(PassflowError):
    """Dangling reference or malformed graph structure."""


class InvariantViolation(PassflowError):
    """An in-memory model violates one of its type invariants."""


# --- OWL reading ------------------------------------------------------------


class MalformedRdf(PassflowError):
    """Input is not parseable RDF/XML."""


class UnknownClass(PassflowError):
    """An individual is typed by an unsupported PASS ontology class."""

    def __init__(self, class_name: str, individual: str = ""):
        self.class_name = class_name
        self.individual = individual
        msg = f"unsupported PASS class '{class_name}'"
        if individual:
            msg += f" on individual '{individual}'"
        super().__init__(msg)


# --- Translation ------------------------------------------------------------


class TranslationError(PassflowError):
    """Base class for model-to-model translation failures."""


class UnmappableElement(TranslationError):
    """An element survived filtering but has no translation rule (a bug)."""


class DanglingMessageFlow(TranslationError):
    """A throw/catch message event has no attached message flow."""


class AmbiguousMessageFlow(TranslationError):
    """A throw/catch message event matches more than one message flow."""


class Untranslatable(TranslationError):
    """A PASS construct outside the BPMN-expressible subset."""


# --- Compilation ------------------------------------------------------------


class CompileError(PassflowError):
    """Behavior compilation failed (e.g. unreachable states)."""


class UnsupportedConstruct(PassflowError):
    """A PASS construct the behavior compiler does not support."""


class DecodeError(PassflowError):
    """Serialized program/catalog bytes could not be decoded."""


# --- Runtime ----------------------------------------------------------------


class DuplicateInstance(PassflowError):
    """An instance id is already live."""


class NoStartSubject(PassflowError):
    """A model has no subject that can be started on instantiation."""


class CrossInstanceConflict(PassflowError):
    """An actor address is already bound to a different instance."""


class PlacementError(PassflowError):
    """A subject's target actor system is not reachable."""


class UnknownRequestId(PassflowError):
    """complete/cancel referenced an interaction request that does not exist."""


# --- Service ----------------------------------------------------------------


class NotFound(PassflowError):
    """Unknown model or instance id."""


class TaskValidationError(PassflowError):
    """Task completion values do not satisfy the form specification."""


class ModelRejected(PassflowError):
    """An uploaded model failed validation; carries the findings."""

    def __init__(self, message: str, findings=None):
        self.findings = list(findings or [])
        super().__init__(message)
