"""RDF/XML reader reconstructing PASS models.

Accepts the structures the writer emits plus common variations: typed node
elements instead of ``owl:NamedIndividual``, ``rdf:ID`` instead of
``rdf:about``, nested resource nodes, literal properties as XML attributes,
and timer durations typed ``xsd:duration``, ``xsd:string`` or untyped.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field

from ..durations import parse_duration
from ..errors import MalformedRdf, StructuralError, UnknownClass
from . import vocab as V
from .model import (
    BusinessField,
    PassModel,
    ReceiveCondition,
    SendCondition,
    State,
    StateKind,
    Subject,
    SubjectBehavior,
    TimerCondition,
    Transition,
    TransitionKind,
    MessageExchange,
    MessageSpecification,
)

_STATE_KINDS = {
    V.CLS_DO_STATE: StateKind.DO,
    V.CLS_SEND_STATE: StateKind.SEND,
    V.CLS_RECEIVE_STATE: StateKind.RECEIVE,
}

_TRANSITION_KINDS = {
    V.CLS_DO_TRANSITION: TransitionKind.DO,
    V.CLS_SEND_TRANSITION: TransitionKind.SEND,
    V.CLS_RECEIVE_TRANSITION: TransitionKind.RECEIVE,
    V.CLS_TIMER_TRANSITION: TransitionKind.TIMER,
}

_CONDITION_CLASSES = {V.CLS_SEND_CONDITION, V.CLS_RECEIVE_CONDITION, V.CLS_TIMER_CONDITION}


@dataclass
class _Ref:
    iri: str


@dataclass
class _Literal:
    text: str
    datatype: str | None = None


@dataclass
class _Individual:
    iri: str
    types: list[str] = field(default_factory=list)  # full IRIs
    props: list[tuple[str, object]] = field(default_factory=list)  # (prop IRI, value)

    def refs(self, prop_iri: str) -> list[str]:
        return [v.iri for p, v in self.props if p == prop_iri and isinstance(v, _Ref)]

    def ref(self, prop_iri: str) -> str | None:
        refs = self.refs(prop_iri)
        return refs[0] if refs else None

    def literals(self, prop_iri: str) -> list[_Literal]:
        return [v for p, v in self.props if p == prop_iri and isinstance(v, _Literal)]

    def literal(self, prop_iri: str) -> str | None:
        lits = self.literals(prop_iri)
        return lits[0].text if lits else None


def read_owl(document: bytes, *, pass_ont_iri: str | None = None) -> PassModel:
    """Reconstruct a :class:`PassModel` from RDF/XML bytes."""
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise MalformedRdf(f"not well-formed XML: {exc}") from exc
    if root.tag != f"{{{V.RDF_NS}}}RDF":
        raise MalformedRdf(f"root element is {root.tag!r}, expected rdf:RDF")

    base = root.get("xml:base") or root.get(f"{{{'http://www.w3.org/XML/1998/namespace'}}}base") or ""
    graph = _Graph(base)
    for child in root:
        graph.read_node(child)

    pass_ns = _detect_pass_ns(graph, pass_ont_iri)
    return _reconstruct(graph, pass_ns)


def _detect_pass_ns(graph: "_Graph", explicit: str | None) -> str:
    if explicit:
        return explicit.rstrip("#") + "#"
    for ind in graph.individuals.values():
        if f"{V.OWL_NS}Ontology" in ind.types:
            imported = ind.ref(f"{V.OWL_NS}imports")
            if imported:
                return imported.rstrip("#") + "#"
    return V.DEFAULT_PASS_ONT_IRI + "#"


class _Graph:
    def __init__(self, base: str):
        self.base = base
        self.individuals: dict[str, _Individual] = {}
        self._anon = 0

    def resolve(self, ref: str) -> str:
        if ref.startswith("#"):
            return self.base + ref
        if "://" in ref or ref.startswith("urn:"):
            return ref
        if not ref:
            return self.base
        return f"{self.base}#{ref}" if self.base else ref

    def get(self, iri: str) -> _Individual:
        if iri not in self.individuals:
            self.individuals[iri] = _Individual(iri)
        return self.individuals[iri]

    def read_node(self, el: ET.Element) -> str:
        """Read a node element (typed node or NamedIndividual); returns its IRI."""
        about = el.get(f"{{{V.RDF_NS}}}about")
        node_id = el.get(f"{{{V.RDF_NS}}}ID")
        node_ref = el.get(f"{{{V.RDF_NS}}}nodeID")
        if about is not None:
            iri = self.resolve(about)
        elif node_id is not None:
            iri = self.resolve(f"#{node_id}")
        elif node_ref is not None:
            iri = f"_:{node_ref}"
        else:
            self._anon += 1
            iri = f"_:anon{self._anon}"
        ind = self.get(iri)

        if el.tag not in (
            f"{{{V.RDF_NS}}}Description",
            f"{{{V.OWL_NS}}}NamedIndividual",
        ):
            ind.types.append(_expand(el.tag))

        # Literal properties in attribute form.
        for attr, value in el.attrib.items():
            ns, local = _split(attr)
            if ns in (V.RDF_NS, "http://www.w3.org/XML/1998/namespace", ""):
                continue
            ind.props.append((ns + local, _Literal(value)))

        for prop_el in el:
            self._read_property(ind, prop_el)
        return iri

    def _read_property(self, ind: _Individual, el: ET.Element) -> None:
        prop_iri = _expand(el.tag)
        resource = el.get(f"{{{V.RDF_NS}}}resource")
        node_ref = el.get(f"{{{V.RDF_NS}}}nodeID")
        if prop_iri == f"{V.RDF_NS}type":
            if resource:
                ind.types.append(self.resolve(resource))
            return
        if resource is not None:
            ind.props.append((prop_iri, _Ref(self.resolve(resource))))
            return
        if node_ref is not None:
            ind.props.append((prop_iri, _Ref(f"_:{node_ref}")))
            return
        children = list(el)
        if children:
            child_iri = self.read_node(children[0])
            ind.props.append((prop_iri, _Ref(child_iri)))
            return
        datatype = el.get(f"{{{V.RDF_NS}}}datatype")
        ind.props.append((prop_iri, _Literal(el.text or "", datatype)))


def _expand(tag: str) -> str:
    ns, local = _split(tag)
    return ns + local


def _split(tag: str) -> tuple[str, str]:
    if tag.startswith("{"):
        ns, local = tag[1:].split("}", 1)
        return ns, local
    return "", tag


def _reconstruct(graph: _Graph, pass_ns: str) -> PassModel:
    p = lambda name: pass_ns + name
    x = lambda name: V.EXT_NS + name

    def pass_types(ind: _Individual) -> list[str]:
        found = []
        for t in ind.types:
            if t.startswith(pass_ns):
                found.append(t[len(pass_ns):])
        return found

    by_class: dict[str, list[_Individual]] = {}
    cls_of: dict[str, str] = {}
    for ind in graph.individuals.values():
        classes = pass_types(ind)
        if not classes:
            continue
        for cls in classes:
            if cls not in V.SUPPORTED_CLASSES:
                raise UnknownClass(cls, ind.iri)
        cls = classes[0]
        by_class.setdefault(cls, []).append(ind)
        cls_of[ind.iri] = cls

    def cid(ind: _Individual) -> str:
        explicit = ind.literal(p(V.PROP_COMPONENT_ID))
        if explicit:
            return explicit
        if "#" in ind.iri:
            return ind.iri.rsplit("#", 1)[1]
        return ind.iri

    def label(ind: _Individual) -> str:
        return ind.literal(p(V.PROP_COMPONENT_LABEL)) or ""

    def cid_of_iri(iri: str, context: str) -> str:
        ind = graph.individuals.get(iri)
        if ind is None:
            raise StructuralError(f"{context}: reference to unknown individual '{iri}'")
        return cid(ind)

    model = PassModel(name="process-model")

    roots = by_class.get(V.CLS_PROCESS_MODEL, [])
    if roots:
        model.name = label(roots[0]) or cid(roots[0])

    # Conditions first; transitions attach them by reference.
    conditions: dict[str, object] = {}
    for ind in by_class.get(V.CLS_SEND_CONDITION, []):
        exchange = ind.ref(p(V.PROP_REQUIRES_EXCHANGE))
        sent_to = ind.ref(p(V.PROP_SENT_TO))
        if not exchange or not sent_to:
            raise StructuralError(f"send condition '{cid(ind)}' missing exchange or recipient")
        conditions[ind.iri] = SendCondition(
            component_id=cid(ind),
            message_exchange=cid_of_iri(exchange, f"condition '{cid(ind)}'"),
            message_sent_to=cid_of_iri(sent_to, f"condition '{cid(ind)}'"),
        )
    for ind in by_class.get(V.CLS_RECEIVE_CONDITION, []):
        exchange = ind.ref(p(V.PROP_REQUIRES_EXCHANGE))
        sent_from = ind.ref(p(V.PROP_SENT_FROM))
        if not exchange or not sent_from:
            raise StructuralError(f"receive condition '{cid(ind)}' missing exchange or sender")
        conditions[ind.iri] = ReceiveCondition(
            component_id=cid(ind),
            message_exchange=cid_of_iri(exchange, f"condition '{cid(ind)}'"),
            message_sent_from=cid_of_iri(sent_from, f"condition '{cid(ind)}'"),
        )
    for ind in by_class.get(V.CLS_TIMER_CONDITION, []):
        lits = ind.literals(p(V.PROP_TIMEOUT))
        if not lits:
            raise StructuralError(f"timer condition '{cid(ind)}' has no duration")
        lit = lits[0]
        if lit.datatype not in (None, f"{V.XSD_NS}duration", f"{V.XSD_NS}string"):
            raise StructuralError(
                f"timer condition '{cid(ind)}' has unsupported duration datatype "
                f"'{lit.datatype}'"
            )
        try:
            duration = parse_duration(lit.text.strip())
        except ValueError as exc:
            raise StructuralError(f"timer condition '{cid(ind)}': {exc}") from exc
        conditions[ind.iri] = TimerCondition(component_id=cid(ind), duration=duration)

    for ind in sorted(by_class.get(V.CLS_SPECIFICATION, []), key=cid):
        fields = []
        raw = ind.literal(x(V.EXT_PAYLOAD_FIELDS))
        if raw:
            try:
                parsed = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise StructuralError(
                    f"specification '{cid(ind)}' has malformed payload fields"
                ) from exc
            for entry in parsed:
                fields.append(
                    BusinessField(
                        name=entry["name"],
                        display_name=entry.get("displayName", entry["name"]),
                        field_type=entry.get("fieldType", "string"),
                    )
                )
        model.message_specifications.append(
            MessageSpecification(
                component_id=cid(ind), component_label=label(ind), payload_fields=fields
            )
        )

    for ind in sorted(by_class.get(V.CLS_EXCHANGE, []), key=cid):
        sender = ind.ref(p(V.PROP_SENDER))
        receiver = ind.ref(p(V.PROP_RECEIVER))
        spec = ind.ref(p(V.PROP_MESSAGE_TYPE))
        if not (sender and receiver and spec):
            raise StructuralError(
                f"message exchange '{cid(ind)}' missing sender, receiver or type"
            )
        ctx = f"exchange '{cid(ind)}'"
        model.message_exchanges.append(
            MessageExchange(
                component_id=cid(ind),
                sender=cid_of_iri(sender, ctx),
                receiver=cid_of_iri(receiver, ctx),
                message_spec=cid_of_iri(spec, ctx),
            )
        )

    # Behaviors with their states, transitions, and actions.
    state_classes = set(_STATE_KINDS)
    transition_classes = set(_TRANSITION_KINDS)
    behaviors: dict[str, SubjectBehavior] = {}  # keyed by behavior IRI
    for ind in sorted(by_class.get(V.CLS_BEHAVIOR, []), key=cid):
        behavior = SubjectBehavior(component_id=cid(ind))
        initial_iris = set(ind.refs(p(V.PROP_INITIAL_STATE)))
        end_iris = set(ind.refs(p(V.PROP_END_STATE)))
        contained = ind.refs(p(V.PROP_CONTAINS))
        action_of_state: dict[str, str] = {}
        members: list[_Individual] = []
        for member_iri in contained:
            member = graph.individuals.get(member_iri)
            if member is None:
                raise StructuralError(
                    f"behavior '{behavior.component_id}' contains unknown "
                    f"individual '{member_iri}'"
                )
            members.append(member)
        for member in members:
            if cls_of.get(member.iri) == V.CLS_ACTION:
                for inner_iri in member.refs(p(V.PROP_CONTAINS)):
                    if cls_of.get(inner_iri) in state_classes:
                        action_of_state[inner_iri] = cid(member)
        for member in sorted(members, key=cid):
            cls = cls_of.get(member.iri)
            if cls in state_classes:
                behavior.states.append(
                    State(
                        component_id=cid(member),
                        component_label=label(member),
                        kind=_STATE_KINDS[cls],
                        is_initial=member.iri in initial_iris,
                        is_end=member.iri in end_iris,
                        action_id=action_of_state.get(member.iri, ""),
                    )
                )
            elif cls in transition_classes:
                source = member.ref(p(V.PROP_SOURCE_STATE))
                target = member.ref(p(V.PROP_TARGET_STATE))
                if not source or not target:
                    raise StructuralError(
                        f"transition '{cid(member)}' missing source or target state"
                    )
                cond_iri = member.ref(p(V.PROP_TRANSITION_CONDITION))
                condition = conditions.get(cond_iri) if cond_iri else None
                if cond_iri and condition is None:
                    raise StructuralError(
                        f"transition '{cid(member)}' references unknown condition"
                    )
                ctx = f"transition '{cid(member)}'"
                behavior.transitions.append(
                    Transition(
                        component_id=cid(member),
                        kind=_TRANSITION_KINDS[cls],
                        source_state=cid_of_iri(source, ctx),
                        target_state=cid_of_iri(target, ctx),
                        component_label=label(member),
                        condition=condition,
                        via_incoming_flow=member.literal(x(V.EXT_VIA_INCOMING)),
                        via_outgoing_flow=member.literal(x(V.EXT_VIA_OUTGOING)),
                    )
                )
        behaviors[ind.iri] = behavior

    for ind in sorted(by_class.get(V.CLS_SUBJECT, []), key=cid):
        behavior_iri = ind.ref(p(V.PROP_HAS_BEHAVIOR))
        behavior = behaviors.get(behavior_iri) if behavior_iri else None
        subject = Subject(component_id=cid(ind), component_label=label(ind))
        flag = ind.literal(x(V.EXT_IS_START_SUBJECT))
        if flag is not None:
            subject.is_start_subject = flag.strip().lower() == "true"
        elif behavior is not None:
            initial = (
                behavior.state_by_id(behavior.initial_state_id)
                if behavior.initial_state_id
                else None
            )
            subject.is_start_subject = (
                initial is not None and initial.kind is not StateKind.RECEIVE
            )
        model.subjects.append(subject)
        if behavior is not None:
            model.behaviors[subject.component_id] = behavior

    return model.normalized()
