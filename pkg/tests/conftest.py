import logging
from pathlib import Path

import pytest

from passflow.bpmn import parse_bpmn
from passflow.compiler import compile_model
from passflow.translate import to_simple, translate_to_pass

CORPUS = Path(__file__).resolve().parent.parent / "corpus"

#: P14D compressed to 200 virtual milliseconds
APPLICANT_TIMER_SCALE = 200 / (14 * 24 * 3600 * 1000)

BPMN_CORPUS = [
    "applicant_company.bpmn",
    "all_elements.bpmn",
    "pattern_send.bpmn",
    "pattern_receive.bpmn",
    "pattern_send_receive.bpmn",
    "pattern_racing.bpmn",
]

OWL_CORPUS = [
    "customer_companies.owl",
    "applicant_company_enriched.owl",
    "timer_string_duration.owl",
]


@pytest.fixture(autouse=True)
def _quiet_engine_log(caplog):
    logging.getLogger("passflow.engine").setLevel(logging.INFO)
    yield


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS


def corpus_bytes(name: str) -> bytes:
    return (CORPUS / name).read_bytes()


@pytest.fixture(scope="session")
def applicant_defs():
    return parse_bpmn(corpus_bytes("applicant_company.bpmn"))


@pytest.fixture()
def applicant_pass(applicant_defs):
    return translate_to_pass(to_simple(applicant_defs), name="hiring")


@pytest.fixture()
def applicant_compiled(applicant_pass):
    return compile_model(applicant_pass)
