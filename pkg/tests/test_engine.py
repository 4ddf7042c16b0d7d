import json
import logging

import pytest

from passflow.errors import (
    ModelRejected,
    NotFound,
    TaskValidationError,
    UnknownRequestId,
)
from passflow.service import InteractionScript, ScriptRule, WorkflowEngine, run_scripted
from passflow.service.engine import build_model

from .conftest import APPLICANT_TIMER_SCALE, corpus_bytes


@pytest.fixture()
def engine():
    return WorkflowEngine()


def _upload_applicant(engine):
    return engine.upload_model(
        corpus_bytes("applicant_company.bpmn"), "bpmn", "hiring"
    )


class TestModelStore:
    def test_upload_bpmn(self, engine):
        record = _upload_applicant(engine)
        assert record.model_id == "m-1"
        assert set(record.compiled.programs) == {"applicant", "company"}
        assert record.source_kind == "bpmn"
        assert record.program_bytes

    def test_upload_owl(self, engine):
        record = engine.upload_model(
            corpus_bytes("applicant_company_enriched.owl"), "owl"
        )
        assert set(record.compiled.programs) == {"applicant", "company"}

    def test_upload_invalid_owl_rejected_with_findings(self, engine):
        # Drop the send transition's condition target: validation must fail.
        doc = corpus_bytes("timer_string_duration.owl").replace(
            b'<pass:requiresPerformedMessageExchange rdf:resource="#ex_ping"/>',
            b'<pass:requiresPerformedMessageExchange rdf:resource="#ex_pong"/>',
        )
        with pytest.raises(ModelRejected) as err:
            engine.upload_model(doc, "owl")
        assert err.value.findings

    def test_upload_same_document_twice_gives_two_records(self, engine):
        a = _upload_applicant(engine)
        b = _upload_applicant(engine)
        assert a.model_id != b.model_id
        assert len(engine.list_models()) == 2

    def test_unknown_kind(self, engine):
        with pytest.raises(ModelRejected):
            engine.upload_model(b"x", "pdf")

    def test_stored_artifacts_match_fresh_compile(self, engine):
        record = _upload_applicant(engine)
        assert engine.verify_record(record.model_id)


class TestInstances:
    def test_start_and_status(self, engine):
        record = _upload_applicant(engine)
        instance_id = engine.start_instance(record.model_id, "first run")
        status = engine.status(instance_id)
        assert status.instance_name == "first run"
        assert not status.completed
        subjects = {s.subject: s for s in status.subjects}
        # The applicant ran to its gateway receive state; the company waits
        # at the decision task.
        assert subjects["Applicant"].alive
        assert subjects["Applicant"].current_state_label == "Wait for answer"
        assert subjects["Company"].current_state_label == "Decide"

    def test_start_subjects_wait_in_initial_states(self, engine):
        # A model whose start subject needs interaction in its initial state
        # stays there: status right after start shows the initial state.
        record = engine.upload_model(
            corpus_bytes("applicant_company_enriched.owl"), "owl"
        )
        instance_id = engine.start_instance(record.model_id, "enriched")
        status = engine.status(instance_id)
        subjects = {s.subject: s for s in status.subjects}
        assert subjects["Applicant"].alive
        assert subjects["Applicant"].current_state_label == "Write application"

    def test_stop_instance_clears_registry(self, engine):
        record = _upload_applicant(engine)
        instance_id = engine.start_instance(record.model_id, "x")
        engine.stop_instance(instance_id)
        assert engine.runtime.registry_snapshot(instance_id) == {}
        assert engine.status(instance_id).completed
        assert engine.list_tasks(instance_id) == []

    def test_status_unknown_instance(self, engine):
        with pytest.raises(NotFound):
            engine.status("i-404")
        with pytest.raises(NotFound):
            engine.stop_instance("i-404")


class TestTasks:
    def test_task_has_context_and_form(self, engine):
        record = engine.upload_model(
            corpus_bytes("applicant_company_enriched.owl"), "owl"
        )
        instance_id = engine.start_instance(record.model_id, "apply-now")
        tasks = engine.list_tasks(instance_id)
        assert len(tasks) == 1
        task = tasks[0]
        assert task["context"] == {
            "instanceName": "apply-now",
            "modelName": "applicant-company-enriched",
            "subjectLabel": "Applicant",
            "stateLabel": "Write application",
        }
        fields = {f["name"]: f for f in task["formSpec"]["fields"]}
        assert fields["availableFrom"]["fieldType"] == "date"
        assert fields["yearsOfExperience"]["fieldType"] == "integer"

    def test_complete_advances_instance(self, engine):
        record = _upload_applicant(engine)
        instance_id = engine.start_instance(record.model_id, "x")
        task = engine.list_tasks(instance_id)[0]
        engine.complete_task(task["requestId"], choice="invite")
        status = engine.status(instance_id)
        assert status.completed
        subjects = {s.subject: s for s in status.subjects}
        assert subjects["Applicant"].current_state_label == "Invited"

    def test_complete_twice_is_unknown(self, engine):
        record = _upload_applicant(engine)
        instance_id = engine.start_instance(record.model_id, "x")
        task = engine.list_tasks(instance_id)[0]
        engine.complete_task(task["requestId"], choice="invite")
        with pytest.raises(UnknownRequestId):
            engine.complete_task(task["requestId"], choice="invite")

    def test_missing_required_field_keeps_task_pending(self, engine):
        record = engine.upload_model(
            corpus_bytes("applicant_company_enriched.owl"), "owl"
        )
        instance_id = engine.start_instance(record.model_id, "x")
        task = engine.list_tasks(instance_id)[0]
        with pytest.raises(TaskValidationError):
            engine.complete_task(task["requestId"], values={"applicantName": "Jo"})
        assert engine.list_tasks(instance_id)  # still pending

    def test_field_type_validation(self, engine):
        record = engine.upload_model(
            corpus_bytes("applicant_company_enriched.owl"), "owl"
        )
        instance_id = engine.start_instance(record.model_id, "x")
        task = engine.list_tasks(instance_id)[0]
        base = {
            "applicantName": "Jo",
            "availableFrom": "2026-09-01",
            "yearsOfExperience": 3,
        }
        for corrupted in (
            {**base, "availableFrom": "soon"},
            {**base, "yearsOfExperience": "several"},
            {**base, "unexpected": 1},
        ):
            with pytest.raises(TaskValidationError):
                engine.complete_task(task["requestId"], values=corrupted)
        with pytest.raises(TaskValidationError):
            engine.complete_task(task["requestId"], values=base, choice="nope")
        engine.complete_task(task["requestId"], values=base)
        assert engine.list_tasks(instance_id)  # company's task appeared

    def test_wrong_choice_rejected(self, engine):
        record = _upload_applicant(engine)
        instance_id = engine.start_instance(record.model_id, "x")
        task = engine.list_tasks(instance_id)[0]
        with pytest.raises(TaskValidationError):
            engine.complete_task(task["requestId"], choice="maybe")
        with pytest.raises(TaskValidationError):
            engine.complete_task(task["requestId"])


class TestScriptedRuns:
    def _compiled(self):
        _, compiled, _ = build_model(
            corpus_bytes("applicant_company.bpmn"), "bpmn", "hiring"
        )
        return compiled

    def test_invitation_path(self):
        result = run_scripted(
            self._compiled(),
            InteractionScript([ScriptRule(subject="Company", state="Decide", choice="invite")]),
            seed=0,
            timer_scale=APPLICANT_TIMER_SCALE,
        )
        assert result.completed
        assert ("messageReceived", "applicant", "mf_invitation") in result.trace.summary()

    def test_empty_script_stalls_with_context(self):
        # With nothing scripted, the virtual clock hops over the applicant's
        # two-week timer (applicant exits) while the company stays pending.
        result = run_scripted(self._compiled(), None, seed=0)
        assert result.status == "stalled"
        assert result.pending[0]["context"]["stateLabel"] == "Decide"
        assert result.alive_subjects == ["company"]

    def test_same_seed_same_bytes(self):
        script = lambda: InteractionScript(
            [ScriptRule(subject="Company", state="Decide", choice="invite")]
        )
        a = run_scripted(self._compiled(), script(), seed=3, timer_scale=APPLICANT_TIMER_SCALE)
        b = run_scripted(self._compiled(), script(), seed=3, timer_scale=APPLICANT_TIMER_SCALE)
        assert a.trace.to_jsonl() == b.trace.to_jsonl()

    def test_script_repeat_counts(self):
        script = InteractionScript([ScriptRule(choice="invite", repeat=1)])
        result = run_scripted(
            self._compiled(), script, seed=0, timer_scale=APPLICANT_TIMER_SCALE
        )
        assert result.completed


def test_structured_log_lines(engine, caplog):
    with caplog.at_level(logging.INFO, logger="passflow.engine"):
        record = _upload_applicant(engine)
        instance_id = engine.start_instance(record.model_id, "logged")
        task = engine.list_tasks(instance_id)[0]
        engine.complete_task(task["requestId"], choice="invite")
    docs = [json.loads(r.message) for r in caplog.records if r.name == "passflow.engine"]
    assert docs, "no structured log lines"
    for doc in docs:
        assert set(doc) == {"ts", "instanceId", "subject", "event", "detail"}
    state_changes = [d for d in docs if d["event"] == "stateEntered"]
    assert state_changes
    assert all(d["instanceId"] == instance_id and d["subject"] for d in state_changes)


class TestStartSubjects:
    def test_customer_companies_starts_customer_only(self, engine):
        record = engine.upload_model(corpus_bytes("customer_companies.owl"), "owl")
        engine.auto_pump = False
        instance_id = engine.start_instance(record.model_id, "order-1")
        started = engine.runtime.registry_snapshot(instance_id)
        engine.runtime.bus.deliver_all()
        # Only the customer was spawned at instantiation; the supplier comes
        # up on demand once the order message needs a recipient.
        spawns = [
            tag for tag in engine.runtime.bus.spawn_count if tag.startswith(instance_id)
        ]
        assert f"{instance_id}:customer" in spawns
        assert engine.runtime.bus.spawn_count[f"{instance_id}:customer"] == 1

    def test_both_plain_starts_are_started(self, engine):
        record = engine.upload_model(corpus_bytes("pattern_receive.bpmn"), "bpmn")
        engine.auto_pump = False
        instance_id = engine.start_instance(record.model_id, "both")
        tags = {
            tag
            for tag in engine.runtime.bus.spawn_count
            if tag.startswith(f"{instance_id}:")
        }
        assert tags == {f"{instance_id}:producer", f"{instance_id}:consumer"}
