import random
from dataclasses import replace

from passflow.passmodel import (
    MessageExchange,
    MessageSpecification,
    PassModel,
    ReceiveCondition,
    SendCondition,
    State,
    StateKind,
    Subject,
    SubjectBehavior,
    Transition,
    TransitionKind,
    read_owl,
    validate_pass,
)

from .conftest import corpus_bytes


def two_subject_model() -> PassModel:
    """Minimal complete model: one exchange, both sides handled."""
    model = PassModel(name="pair")
    model.subjects = [
        Subject("a", "A", is_start_subject=True),
        Subject("b", "B"),
    ]
    model.message_specifications = [MessageSpecification("spec_m", "m")]
    model.message_exchanges = [MessageExchange("ex_m", "a", "b", "spec_m")]
    model.behaviors["a"] = SubjectBehavior(
        component_id="a_b",
        states=[
            State("a_send", "Send m", StateKind.SEND, is_initial=True),
            State("a_end", "Done", StateKind.DO, is_end=True),
        ],
        transitions=[
            Transition(
                "a_t1", TransitionKind.SEND, "a_send", "a_end",
                condition=SendCondition("a_t1_cond", "ex_m", "b"),
            )
        ],
    )
    model.behaviors["b"] = SubjectBehavior(
        component_id="b_b",
        states=[
            State("b_recv", "Receive m", StateKind.RECEIVE, is_initial=True),
            State("b_end", "Done", StateKind.DO, is_end=True),
        ],
        transitions=[
            Transition(
                "b_t1", TransitionKind.RECEIVE, "b_recv", "b_end",
                condition=ReceiveCondition("b_t1_cond", "ex_m", "a"),
            )
        ],
    )
    return model


def test_customer_companies_model_is_clean():
    model = read_owl(corpus_bytes("customer_companies.owl"))
    assert validate_pass(model).findings == []


def test_minimal_model_is_clean():
    assert validate_pass(two_subject_model()).findings == []


def test_unhandled_exchange_in_sender():
    model = two_subject_model()
    model.behaviors["a"].transitions[0].condition = None
    model.behaviors["a"].transitions[0] = replace(
        model.behaviors["a"].transitions[0],
        kind=TransitionKind.DO,
        condition=None,
    )
    # The send state now has a do transition; several findings expected, the
    # key one citing the unhandled exchange.
    report = validate_pass(model)
    rules = {f.rule for f in report.findings}
    assert "unhandled-exchange" in rules
    cited = [f for f in report.findings if f.rule == "unhandled-exchange"]
    assert any(f.component_id == "ex_m" for f in cited)


def test_unknown_exchange_reference():
    model = two_subject_model()
    model.behaviors["a"].transitions[0].condition.message_exchange = "ghost"
    report = validate_pass(model)
    assert any(f.rule == "unknown-exchange" for f in report.findings)


def test_multiple_initial_states():
    model = two_subject_model()
    model.behaviors["a"].states[1].is_initial = True
    report = validate_pass(model)
    assert any(f.rule == "multiple-initial-states" for f in report.findings)


def test_no_end_state():
    model = two_subject_model()
    model.behaviors["b"].states[1].is_end = False
    report = validate_pass(model)
    rules = {f.rule for f in report.findings}
    assert "no-end-state" in rules and "dead-end-state" in rules


def test_dangling_transition_state():
    model = two_subject_model()
    model.behaviors["a"].transitions[0].target_state = "nowhere"
    report = validate_pass(model)
    assert any(f.rule == "dangling-transition" for f in report.findings)


def test_missing_behavior():
    model = two_subject_model()
    del model.behaviors["b"]
    report = validate_pass(model)
    assert any(f.rule == "missing-behavior" for f in report.findings)


def test_self_exchange():
    model = two_subject_model()
    model.message_exchanges[0].receiver = "a"
    report = validate_pass(model)
    assert any(f.rule == "self-exchange" for f in report.findings)


def test_wrong_sender():
    model = two_subject_model()
    # b also sends ex_m although a is its sender
    model.behaviors["b"].states.append(State("b_s2", "Oops", StateKind.SEND))
    model.behaviors["b"].transitions.append(
        Transition(
            "b_t2", TransitionKind.SEND, "b_s2", "b_end",
            condition=SendCondition("b_t2_cond", "ex_m", "b"),
        )
    )
    model.behaviors["b"].states.append(
        State("b_pre", "Pre", StateKind.DO)
    )
    model.behaviors["b"].transitions.append(
        Transition("b_t3", TransitionKind.DO, "b_pre", "b_s2")
    )
    report = validate_pass(model)
    assert any(f.rule == "wrong-sender" for f in report.findings)


def test_findings_are_order_independent():
    model = two_subject_model()
    model.behaviors["a"].states[1].is_initial = True  # inject a defect
    baseline = validate_pass(model).findings

    rng = random.Random(42)
    for _ in range(5):
        shuffled = two_subject_model()
        shuffled.behaviors["a"].states[1].is_initial = True
        rng.shuffle(shuffled.subjects)
        rng.shuffle(shuffled.message_exchanges)
        for behavior in shuffled.behaviors.values():
            rng.shuffle(behavior.states)
            rng.shuffle(behavior.transitions)
        assert validate_pass(shuffled).findings == baseline
