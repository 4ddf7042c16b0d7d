"""RDF/XML emission of PASS models.

Every model element becomes one named individual with exactly one PASS class
type and a component id data property. Timer durations are typed
``xsd:duration`` (readers must also accept ``xsd:string``, which some tools
emit).
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET

from ..durations import format_duration
from ..errors import InvariantViolation
from . import vocab as V
from .model import (
    PassModel,
    ReceiveCondition,
    SendCondition,
    StateKind,
    TimerCondition,
    TransitionKind,
)
from .validate import validate_pass

_STATE_CLASS = {
    StateKind.DO: V.CLS_DO_STATE,
    StateKind.SEND: V.CLS_SEND_STATE,
    StateKind.RECEIVE: V.CLS_RECEIVE_STATE,
}

_TRANSITION_CLASS = {
    TransitionKind.DO: V.CLS_DO_TRANSITION,
    TransitionKind.SEND: V.CLS_SEND_TRANSITION,
    TransitionKind.RECEIVE: V.CLS_RECEIVE_TRANSITION,
    TransitionKind.TIMER: V.CLS_TIMER_TRANSITION,
}


def _iri_safe(text: str) -> str:
    """Display names may carry spaces etc.; fragment ids may not."""
    return "".join(c if c.isalnum() or c in "_-." else "-" for c in text)


def write_owl(
    model: PassModel,
    *,
    base_iri: str = V.DEFAULT_BASE_IRI,
    pass_ont_iri: str = V.DEFAULT_PASS_ONT_IRI,
) -> bytes:
    """Emit the model as RDF/XML importing the standard PASS ontology."""
    if not model.subjects:
        raise InvariantViolation("a process model needs at least one subject")
    report = validate_pass(model)
    if not report.ok:
        details = "; ".join(f"{f.component_id}: {f.message}" for f in report.errors)
        raise InvariantViolation(f"model fails validation: {details}")
    # RDF carries no element order; emit the canonical form so structurally
    # equal models serialize to identical bytes.
    model = model.normalized()

    pass_ns = pass_ont_iri + "#"
    ET.register_namespace("rdf", V.RDF_NS)
    ET.register_namespace("rdfs", V.RDFS_NS)
    ET.register_namespace("owl", V.OWL_NS)
    ET.register_namespace("xsd", V.XSD_NS)
    ET.register_namespace("pass", pass_ns)
    ET.register_namespace("pfx", V.EXT_NS)

    root = ET.Element(f"{{{V.RDF_NS}}}RDF")
    root.set("xml:base", base_iri)

    ontology = ET.SubElement(root, f"{{{V.OWL_NS}}}Ontology")
    ontology.set(f"{{{V.RDF_NS}}}about", base_iri)
    imports = ET.SubElement(ontology, f"{{{V.OWL_NS}}}imports")
    imports.set(f"{{{V.RDF_NS}}}resource", pass_ont_iri)

    w = _Writer(root, base_iri, pass_ns)

    model_cid = _iri_safe(model.name) or "processModel"
    root_ind = w.individual(model_cid, V.CLS_PROCESS_MODEL, label=model.name)

    list_ind = w.individual("messageExchangeList", V.CLS_EXCHANGE_LIST)
    w.ref(root_ind, V.PROP_CONTAINS, "messageExchangeList")

    for subject in model.subjects:
        ind = w.individual(subject.component_id, V.CLS_SUBJECT, label=subject.component_label)
        w.literal(ind, V.EXT_IS_START_SUBJECT, "true" if subject.is_start_subject else "false",
                  ext=True, datatype=f"{V.XSD_NS}boolean")
        behavior = model.behaviors.get(subject.component_id)
        if behavior is not None:
            w.ref(ind, V.PROP_HAS_BEHAVIOR, behavior.component_id)
        w.ref(root_ind, V.PROP_CONTAINS, subject.component_id)

    for spec in model.message_specifications:
        ind = w.individual(spec.component_id, V.CLS_SPECIFICATION, label=spec.component_label)
        if spec.payload_fields:
            payload = [
                {"name": f.name, "displayName": f.display_name, "fieldType": f.field_type}
                for f in spec.payload_fields
            ]
            w.literal(ind, V.EXT_PAYLOAD_FIELDS,
                      json.dumps(payload, sort_keys=True, separators=(",", ":")),
                      ext=True)
        w.ref(root_ind, V.PROP_CONTAINS, spec.component_id)

    for exchange in model.message_exchanges:
        ind = w.individual(exchange.component_id, V.CLS_EXCHANGE)
        w.ref(ind, V.PROP_SENDER, exchange.sender)
        w.ref(ind, V.PROP_RECEIVER, exchange.receiver)
        w.ref(ind, V.PROP_MESSAGE_TYPE, exchange.message_spec)
        w.ref(list_ind, V.PROP_CONTAINS, exchange.component_id)

    for behavior in model.behaviors.values():
        b_ind = w.individual(behavior.component_id, V.CLS_BEHAVIOR)
        w.ref(root_ind, V.PROP_CONTAINS, behavior.component_id)
        for state in behavior.states:
            s_ind = w.individual(
                state.component_id, _STATE_CLASS[state.kind], label=state.component_label
            )
            w.ref(b_ind, V.PROP_CONTAINS, state.component_id)
            if state.is_initial:
                w.ref(b_ind, V.PROP_INITIAL_STATE, state.component_id)
            if state.is_end:
                w.ref(b_ind, V.PROP_END_STATE, state.component_id)
            a_ind = w.individual(state.action_id, V.CLS_ACTION)
            w.ref(b_ind, V.PROP_CONTAINS, state.action_id)
            w.ref(a_ind, V.PROP_CONTAINS, state.component_id)
            for t in behavior.outgoing(state.component_id):
                w.ref(a_ind, V.PROP_CONTAINS, t.component_id)
        for t in behavior.transitions:
            t_ind = w.individual(
                t.component_id, _TRANSITION_CLASS[t.kind], label=t.component_label
            )
            w.ref(b_ind, V.PROP_CONTAINS, t.component_id)
            w.ref(t_ind, V.PROP_SOURCE_STATE, t.source_state)
            w.ref(t_ind, V.PROP_TARGET_STATE, t.target_state)
            if t.via_incoming_flow:
                w.literal(t_ind, V.EXT_VIA_INCOMING, t.via_incoming_flow, ext=True)
            if t.via_outgoing_flow:
                w.literal(t_ind, V.EXT_VIA_OUTGOING, t.via_outgoing_flow, ext=True)
            if t.condition is not None:
                w.ref(t_ind, V.PROP_TRANSITION_CONDITION, t.condition.component_id)
                _emit_condition(w, b_ind, t.condition)

    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True)


def _emit_condition(w: "_Writer", b_ind, condition) -> None:
    if isinstance(condition, SendCondition):
        ind = w.individual(condition.component_id, V.CLS_SEND_CONDITION)
        w.ref(ind, V.PROP_REQUIRES_EXCHANGE, condition.message_exchange)
        w.ref(ind, V.PROP_SENT_TO, condition.message_sent_to)
    elif isinstance(condition, ReceiveCondition):
        ind = w.individual(condition.component_id, V.CLS_RECEIVE_CONDITION)
        w.ref(ind, V.PROP_REQUIRES_EXCHANGE, condition.message_exchange)
        w.ref(ind, V.PROP_SENT_FROM, condition.message_sent_from)
    elif isinstance(condition, TimerCondition):
        ind = w.individual(condition.component_id, V.CLS_TIMER_CONDITION)
        w.literal(
            ind,
            V.PROP_TIMEOUT,
            format_duration(condition.duration),
            datatype=f"{V.XSD_NS}duration",
        )
    else:  # pragma: no cover - enum of condition types is closed
        raise InvariantViolation(f"unknown condition type {type(condition)!r}")
    w.ref(b_ind, V.PROP_CONTAINS, condition.component_id)


class _Writer:
    def __init__(self, root: ET.Element, base_iri: str, pass_ns: str):
        self.root = root
        self.base_iri = base_iri
        self.pass_ns = pass_ns

    def iri(self, component_id: str) -> str:
        return f"{self.base_iri}#{component_id}"

    def individual(self, component_id: str, pass_class: str, label: str = "") -> ET.Element:
        el = ET.SubElement(self.root, f"{{{V.OWL_NS}}}NamedIndividual")
        el.set(f"{{{V.RDF_NS}}}about", self.iri(component_id))
        type_el = ET.SubElement(el, f"{{{V.RDF_NS}}}type")
        type_el.set(f"{{{V.RDF_NS}}}resource", f"{self.pass_ns}{pass_class}")
        self.literal(el, V.PROP_COMPONENT_ID, component_id)
        if label:
            self.literal(el, V.PROP_COMPONENT_LABEL, label)
        return el

    def ref(self, individual: ET.Element, prop: str, target_component_id: str) -> None:
        el = ET.SubElement(individual, f"{{{self.pass_ns}}}{prop}")
        el.set(f"{{{V.RDF_NS}}}resource", self.iri(target_component_id))

    def literal(
        self,
        individual: ET.Element,
        prop: str,
        value: str,
        *,
        ext: bool = False,
        datatype: str | None = None,
    ) -> None:
        ns = V.EXT_NS if ext else self.pass_ns
        el = ET.SubElement(individual, f"{{{ns}}}{prop}")
        if datatype:
            el.set(f"{{{V.RDF_NS}}}datatype", datatype)
        el.text = value
