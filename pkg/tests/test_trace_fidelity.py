"""Every actor's entered-state sequence must be a path in its program."""

import pytest

from passflow.compiler import CompiledModel
from passflow.runtime import ExecutionTrace
from passflow.service import InteractionScript, ScriptRule, run_scripted
from passflow.service.engine import build_model

from .conftest import APPLICANT_TIMER_SCALE, corpus_bytes


def assert_trace_is_program_path(trace: ExecutionTrace, compiled: CompiledModel):
    sequences: dict[tuple[str, str], list[str]] = {}
    for event in trace:
        if event.event == "stateEntered":
            key = (event.instance_id, event.subject)
            sequences.setdefault(key, []).append(dict(event.detail)["state"])
    assert sequences, "no states entered"
    for (_, subject), states in sequences.items():
        program = compiled.programs[subject]
        assert states[0] == program.initial_state_id, subject
        for current, following in zip(states, states[1:]):
            targets = {
                t.target_state_id for t in program.states[current].triggers
            }
            assert following in targets, (
                f"{subject}: {current} -> {following} is not a transition"
            )


def _compiled(name: str) -> CompiledModel:
    _, compiled, _ = build_model(corpus_bytes(name), "bpmn", name)
    return compiled


@pytest.mark.parametrize(
    "rules",
    [
        [ScriptRule(subject="Company", state="Decide", choice="invite")],
        [ScriptRule(subject="Company", state="Decide", choice="reject")],
        [],
    ],
    ids=["invite", "reject", "timeout"],
)
def test_applicant_scenarios_follow_the_programs(rules):
    compiled = _compiled("applicant_company.bpmn")
    result = run_scripted(
        compiled,
        InteractionScript(rules),
        seed=0,
        timer_scale=APPLICANT_TIMER_SCALE,
    )
    assert_trace_is_program_path(result.trace, compiled)


@pytest.mark.parametrize(
    "name",
    [
        "pattern_send.bpmn",
        "pattern_receive.bpmn",
        "pattern_send_receive.bpmn",
        "pattern_racing.bpmn",
    ],
)
def test_patterns_follow_the_programs_across_seeds(name):
    compiled = _compiled(name)
    for seed in range(10):
        result = run_scripted(compiled, None, seed=seed, policy="random")
        assert result.completed, (name, seed)
        assert_trace_is_program_path(result.trace, compiled)
