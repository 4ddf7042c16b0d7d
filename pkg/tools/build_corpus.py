#!/usr/bin/env python3
"""Regenerate the generated corpus files (OWL models authored in code).

Run from the repository root:  python3 tools/build_corpus.py
"""

from __future__ import annotations

import sys
from datetime import timedelta
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from passflow.passmodel import (  # noqa: E402
    BusinessField,
    MessageExchange,
    MessageSpecification,
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
    validate_pass,
    write_owl,
)

CORPUS = Path(__file__).resolve().parent.parent / "corpus"


def _do(cid, label, initial=False, end=False):
    return State(cid, label, StateKind.DO, is_initial=initial, is_end=end)


def _send(cid, label, initial=False):
    return State(cid, label, StateKind.SEND, is_initial=initial)


def _recv(cid, label, initial=False):
    return State(cid, label, StateKind.RECEIVE, is_initial=initial)


def customer_companies() -> PassModel:
    """Customer places an order; the supplier delivers or declines."""
    model = PassModel(name="customer-companies")
    model.subjects = [
        Subject("customer", "Customer", is_start_subject=True),
        Subject("companies", "Companies", is_start_subject=False),
    ]
    model.message_specifications = [
        MessageSpecification("spec_order", "Order"),
        MessageSpecification("spec_delivery", "Delivery"),
        MessageSpecification("spec_decline", "Decline"),
    ]
    model.message_exchanges = [
        MessageExchange("ex_order", "customer", "companies", "spec_order"),
        MessageExchange("ex_delivery", "companies", "customer", "spec_delivery"),
        MessageExchange("ex_decline", "companies", "customer", "spec_decline"),
    ]
    model.behaviors["customer"] = SubjectBehavior(
        component_id="customer_behavior",
        states=[
            _send("cu_order", "Place order", initial=True),
            _recv("cu_wait", "Await answer"),
            _do("cu_done", "Order fulfilled", end=True),
            _do("cu_declined", "Order declined", end=True),
        ],
        transitions=[
            Transition(
                "cu_t1", TransitionKind.SEND, "cu_order", "cu_wait",
                component_label="Order",
                condition=SendCondition("cu_t1_cond", "ex_order", "companies"),
            ),
            Transition(
                "cu_t2", TransitionKind.RECEIVE, "cu_wait", "cu_done",
                component_label="Delivery",
                condition=ReceiveCondition("cu_t2_cond", "ex_delivery", "companies"),
            ),
            Transition(
                "cu_t3", TransitionKind.RECEIVE, "cu_wait", "cu_declined",
                component_label="Decline",
                condition=ReceiveCondition("cu_t3_cond", "ex_decline", "companies"),
            ),
        ],
    )
    model.behaviors["companies"] = SubjectBehavior(
        component_id="companies_behavior",
        states=[
            _recv("co_wait", "Order received", initial=True),
            _do("co_process", "Process order"),
            _send("co_deliver", "Send delivery"),
            _send("co_decline", "Send decline"),
            _do("co_done", "Done", end=True),
        ],
        transitions=[
            Transition(
                "co_t1", TransitionKind.RECEIVE, "co_wait", "co_process",
                component_label="Order",
                condition=ReceiveCondition("co_t1_cond", "ex_order", "customer"),
            ),
            Transition("co_t2", TransitionKind.DO, "co_process", "co_deliver",
                       component_label="deliver"),
            Transition("co_t3", TransitionKind.DO, "co_process", "co_decline",
                       component_label="decline"),
            Transition(
                "co_t4", TransitionKind.SEND, "co_deliver", "co_done",
                component_label="Delivery",
                condition=SendCondition("co_t4_cond", "ex_delivery", "customer"),
            ),
            Transition(
                "co_t5", TransitionKind.SEND, "co_decline", "co_done",
                component_label="Decline",
                condition=SendCondition("co_t5_cond", "ex_decline", "customer"),
            ),
        ],
    )
    return model


def applicant_company_enriched() -> PassModel:
    """The hiring collaboration with business objects on the application."""
    model = PassModel(name="applicant-company-enriched")
    model.subjects = [
        Subject("applicant", "Applicant", is_start_subject=True),
        Subject("company", "Company", is_start_subject=False),
    ]
    model.message_specifications = [
        MessageSpecification(
            "spec_application",
            "application",
            payload_fields=[
                BusinessField("applicantName", "Applicant name", "string"),
                BusinessField("availableFrom", "Available from", "date"),
                BusinessField("yearsOfExperience", "Years of experience", "integer"),
            ],
        ),
        MessageSpecification("spec_invitation", "invitation"),
        MessageSpecification("spec_rejection", "rejection"),
    ]
    model.message_exchanges = [
        MessageExchange("ex_application", "applicant", "company", "spec_application"),
        MessageExchange("ex_invitation", "company", "applicant", "spec_invitation"),
        MessageExchange("ex_rejection", "company", "applicant", "spec_rejection"),
    ]
    model.behaviors["applicant"] = SubjectBehavior(
        component_id="applicant_behavior",
        states=[
            _do("ap_write", "Write application", initial=True),
            _send("ap_send", "Send application"),
            _recv("ap_wait", "Wait for answer"),
            _do("ap_invited", "Invited", end=True),
            _do("ap_rejected", "Rejected", end=True),
            _do("ap_no_answer", "No answer", end=True),
        ],
        transitions=[
            Transition("ap_t1", TransitionKind.DO, "ap_write", "ap_send",
                       component_label="submit"),
            Transition(
                "ap_t2", TransitionKind.SEND, "ap_send", "ap_wait",
                component_label="application",
                condition=SendCondition("ap_t2_cond", "ex_application", "company"),
            ),
            Transition(
                "ap_t3", TransitionKind.RECEIVE, "ap_wait", "ap_invited",
                component_label="invitation",
                condition=ReceiveCondition("ap_t3_cond", "ex_invitation", "company"),
            ),
            Transition(
                "ap_t4", TransitionKind.RECEIVE, "ap_wait", "ap_rejected",
                component_label="rejection",
                condition=ReceiveCondition("ap_t4_cond", "ex_rejection", "company"),
            ),
            Transition(
                "ap_t5", TransitionKind.TIMER, "ap_wait", "ap_no_answer",
                component_label="two weeks",
                condition=TimerCondition("ap_t5_cond", timedelta(days=14)),
            ),
        ],
    )
    model.behaviors["company"] = SubjectBehavior(
        component_id="company_behavior",
        states=[
            _recv("co_inbox", "Application received", initial=True),
            _do("co_check", "Check application"),
            _send("co_invite", "Send invitation"),
            _send("co_reject", "Send rejection"),
            _do("co_done", "Done", end=True),
        ],
        transitions=[
            Transition(
                "co_r1", TransitionKind.RECEIVE, "co_inbox", "co_check",
                component_label="application",
                condition=ReceiveCondition("co_r1_cond", "ex_application", "applicant"),
            ),
            Transition("co_d1", TransitionKind.DO, "co_check", "co_invite",
                       component_label="invite"),
            Transition("co_d2", TransitionKind.DO, "co_check", "co_reject",
                       component_label="reject"),
            Transition(
                "co_s1", TransitionKind.SEND, "co_invite", "co_done",
                component_label="invitation",
                condition=SendCondition("co_s1_cond", "ex_invitation", "applicant"),
            ),
            Transition(
                "co_s2", TransitionKind.SEND, "co_reject", "co_done",
                component_label="rejection",
                condition=SendCondition("co_s2_cond", "ex_rejection", "applicant"),
            ),
        ],
    )
    return model


def main() -> None:
    CORPUS.mkdir(exist_ok=True)
    for name, model in [
        ("customer_companies.owl", customer_companies()),
        ("applicant_company_enriched.owl", applicant_company_enriched()),
    ]:
        report = validate_pass(model)
        if not report.ok:
            raise SystemExit(f"{name}: {[f.message for f in report.errors]}")
        (CORPUS / name).write_bytes(write_owl(model))
        print(f"wrote corpus/{name}")


if __name__ == "__main__":
    main()
