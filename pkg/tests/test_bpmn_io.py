from datetime import timedelta

import pytest
from hypothesis import given, settings

from passflow.bpmn import NodeKind, parse_bpmn, serialize_bpmn
from passflow.errors import InvariantViolation, MalformedXml, StructuralError, UnsupportedElement

from .conftest import corpus_bytes
from .strategies import bpmn_definitions, bpmn_signature

MINIMAL = b"""<?xml version="1.0" encoding="UTF-8"?>
<definitions xmlns="http://www.omg.org/spec/BPMN/20100524/MODEL" id="d1"
             targetNamespace="http://example.org/t">
  <collaboration id="c1">
    <participant id="p1" name="Solo" processRef="proc1"/>
  </collaboration>
  <process id="proc1">
    <startEvent id="s1"><outgoing>f1</outgoing></startEvent>
    <task id="t1" name="Work"><incoming>f1</incoming><outgoing>f2</outgoing></task>
    <endEvent id="e1"><incoming>f2</incoming></endEvent>
    <sequenceFlow id="f1" sourceRef="s1" targetRef="t1"/>
    <sequenceFlow id="f2" sourceRef="t1" targetRef="e1"/>
  </process>
</definitions>
"""


def _patch(template: bytes, old: str, new: str) -> bytes:
    return template.replace(old.encode(), new.encode())


class TestParse:
    def test_minimal_document(self):
        defs = parse_bpmn(MINIMAL)
        assert len(defs.participants) == 1
        process = defs.processes["p1"]
        assert len(process.flow_nodes) == 3
        assert len(process.sequence_flows) == 2

    def test_parallel_gateway_is_unsupported(self):
        doc = _patch(
            MINIMAL,
            '<task id="t1" name="Work">',
            '<parallelGateway id="t1" name="Work">',
        ).replace(b"</task>", b"</parallelGateway>")
        with pytest.raises(UnsupportedElement) as err:
            parse_bpmn(doc)
        assert err.value.element_id == "t1"
        assert "parallelGateway" in err.value.kind

    def test_applicant_company_model(self):
        defs = parse_bpmn(corpus_bytes("applicant_company.bpmn"))
        assert [p.id for p in defs.participants] == ["applicant", "company"]
        assert len(defs.message_flows) == 3
        process = defs.processes["applicant"]
        gateway = process.node_by_id("app_wait")
        assert gateway.kind is NodeKind.EVENT_BASED_GATEWAY
        branch_targets = [
            process.node_by_id(process.flow_by_id(fid).target_ref)
            for fid in gateway.outgoing
        ]
        kinds = sorted(n.kind for n in branch_targets)
        assert kinds.count(NodeKind.CATCH_MESSAGE_EVENT) == 2
        assert kinds.count(NodeKind.CATCH_TIME_EVENT) == 1
        timer = process.node_by_id("app_timeout")
        assert timer.timer_duration == timedelta(days=14)

    def test_not_xml(self):
        with pytest.raises(MalformedXml):
            parse_bpmn(b"this is not xml")

    def test_wrong_namespace(self):
        with pytest.raises(MalformedXml):
            parse_bpmn(b"<definitions xmlns='http://example.org/other'/>")

    def test_dangling_flow_reference(self):
        doc = _patch(MINIMAL, 'targetRef="e1"', 'targetRef="ghost"')
        with pytest.raises(StructuralError):
            parse_bpmn(doc)

    def test_two_start_events(self):
        doc = _patch(
            MINIMAL,
            '<startEvent id="s1"><outgoing>f1</outgoing></startEvent>',
            '<startEvent id="s1"><outgoing>f1</outgoing></startEvent>'
            '<startEvent id="s2"><outgoing>f3</outgoing></startEvent>',
        )
        doc = _patch(
            doc,
            '<sequenceFlow id="f1" sourceRef="s1" targetRef="t1"/>',
            '<sequenceFlow id="f1" sourceRef="s1" targetRef="t1"/>'
            '<sequenceFlow id="f3" sourceRef="s2" targetRef="t1"/>',
        )
        with pytest.raises(StructuralError):
            parse_bpmn(doc)

    def test_decoration_dropped_with_warning(self, caplog):
        doc = _patch(
            MINIMAL,
            '<startEvent id="s1">',
            '<laneSet id="ls1"/><dataObject id="do1"/>'
            '<textAnnotation id="ta1"/><startEvent id="s1">',
        )
        with caplog.at_level("WARNING"):
            defs = parse_bpmn(doc)
        assert defs.processes["p1"].node_by_id("s1") is not None
        dropped = [r.message for r in caplog.records if "dropping" in r.message]
        assert len(dropped) >= 3

    def test_vendor_attributes_ignored(self):
        doc = _patch(
            MINIMAL,
            '<task id="t1" name="Work">',
            '<task id="t1" name="Work" '
            'xmlns:camunda="http://camunda.org/schema/1.0/bpmn" '
            'camunda:assignee="demo">',
        )
        defs = parse_bpmn(doc)
        assert defs.processes["p1"].node_by_id("t1").kind is NodeKind.TASK

    def test_pool_anchored_message_flow_rejected(self):
        doc = corpus_bytes("applicant_company.bpmn").replace(
            b'sourceRef="app_send" targetRef="comp_start"',
            b'sourceRef="applicant" targetRef="comp_start"',
        )
        with pytest.raises(UnsupportedElement) as err:
            parse_bpmn(doc)
        assert "pool" in str(err.value)

    def test_date_timer_rejected(self):
        doc = corpus_bytes("applicant_company.bpmn").replace(
            b'<bpmn:timeDuration xsi:type="bpmn:tFormalExpression">P14D</bpmn:timeDuration>',
            b"<bpmn:timeDate>2026-01-01T00:00:00</bpmn:timeDate>",
        )
        with pytest.raises(UnsupportedElement) as err:
            parse_bpmn(doc)
        assert err.value.element_id == "app_timeout"

    def test_calendar_duration_rejected(self):
        doc = corpus_bytes("applicant_company.bpmn").replace(b">P14D<", b">P1M<")
        with pytest.raises(UnsupportedElement):
            parse_bpmn(doc)

    def test_message_flow_within_one_pool(self):
        doc = corpus_bytes("applicant_company.bpmn").replace(
            b'sourceRef="app_send" targetRef="comp_start"',
            b'sourceRef="app_send" targetRef="app_recv_invitation"',
        )
        with pytest.raises(StructuralError):
            parse_bpmn(doc)


class TestSerialize:
    def test_roundtrip_minimal(self):
        defs = parse_bpmn(MINIMAL)
        assert parse_bpmn(serialize_bpmn(defs)) == defs

    def test_end_event_with_outgoing_is_invariant_violation(self):
        defs = parse_bpmn(MINIMAL)
        process = defs.processes["p1"]
        process.sequence_flows.append(
            type(process.sequence_flows[0])(id="f9", source_ref="e1", target_ref="t1")
        )
        process.link()
        with pytest.raises(InvariantViolation):
            serialize_bpmn(defs)

    @pytest.mark.parametrize(
        "name",
        [
            "applicant_company.bpmn",
            "all_elements.bpmn",
            "pattern_send.bpmn",
            "pattern_receive.bpmn",
            "pattern_send_receive.bpmn",
            "pattern_racing.bpmn",
        ],
    )
    def test_corpus_roundtrip(self, name):
        defs = parse_bpmn(corpus_bytes(name))
        again = parse_bpmn(serialize_bpmn(defs))
        assert again == defs

    def test_preserves_id_kind_name_triples(self):
        source = parse_bpmn(corpus_bytes("applicant_company.bpmn"))
        again = parse_bpmn(serialize_bpmn(source))

        def triples(defs):
            out = set()
            for process in defs.processes.values():
                out.update((n.id, n.kind, n.name) for n in process.flow_nodes)
            return out

        assert triples(again) == triples(source)
        assert bpmn_signature(again) == bpmn_signature(source)


@settings(max_examples=60, deadline=None)
@given(bpmn_definitions())
def test_roundtrip_property(defs):
    assert parse_bpmn(serialize_bpmn(defs)) == defs
