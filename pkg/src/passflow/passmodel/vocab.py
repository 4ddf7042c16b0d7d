"""RDF namespaces and the PASS ontology vocabulary the storage format uses.

The standard PASS ontology IRI is configurable (deployments may pin a
specific version); the default below is the commonly published one. Elements
outside the standard vocabulary (payload field definitions, start-subject
marking, collapsed gateway-branch flow ids) live in a project namespace so
documents remain plain OWL for other tools.
"""

from __future__ import annotations

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"

DEFAULT_PASS_ONT_IRI = "http://www.i2pm.net/standard-pass-ont"
DEFAULT_BASE_IRI = "http://passflow.local/models"
EXT_NS = "http://passflow.local/ontology#"

# PASS classes
CLS_PROCESS_MODEL = "PASSProcessModel"
CLS_SUBJECT = "FullySpecifiedSubject"
CLS_BEHAVIOR = "SubjectBehavior"
CLS_DO_STATE = "DoState"
CLS_SEND_STATE = "SendState"
CLS_RECEIVE_STATE = "ReceiveState"
CLS_ACTION = "Action"
CLS_DO_TRANSITION = "DoTransition"
CLS_SEND_TRANSITION = "SendTransition"
CLS_RECEIVE_TRANSITION = "ReceiveTransition"
CLS_TIMER_TRANSITION = "DayTimeTimerTransition"
CLS_SEND_CONDITION = "SendTransitionCondition"
CLS_RECEIVE_CONDITION = "ReceiveTransitionCondition"
CLS_TIMER_CONDITION = "DayTimeTimerTransitionCondition"
CLS_EXCHANGE = "MessageExchange"
CLS_EXCHANGE_LIST = "MessageExchangeList"
CLS_SPECIFICATION = "MessageSpecification"

SUPPORTED_CLASSES = {
    CLS_PROCESS_MODEL,
    CLS_SUBJECT,
    CLS_BEHAVIOR,
    CLS_DO_STATE,
    CLS_SEND_STATE,
    CLS_RECEIVE_STATE,
    CLS_ACTION,
    CLS_DO_TRANSITION,
    CLS_SEND_TRANSITION,
    CLS_RECEIVE_TRANSITION,
    CLS_TIMER_TRANSITION,
    CLS_SEND_CONDITION,
    CLS_RECEIVE_CONDITION,
    CLS_TIMER_CONDITION,
    CLS_EXCHANGE,
    CLS_EXCHANGE_LIST,
    CLS_SPECIFICATION,
}

# PASS properties
PROP_COMPONENT_ID = "hasModelComponentID"
PROP_COMPONENT_LABEL = "hasModelComponentLabel"
PROP_CONTAINS = "contains"
PROP_HAS_BEHAVIOR = "hasBehavior"
PROP_INITIAL_STATE = "hasInitialStateOfBehavior"
PROP_END_STATE = "hasEndState"
PROP_SOURCE_STATE = "hasSourceState"
PROP_TARGET_STATE = "hasTargetState"
PROP_TRANSITION_CONDITION = "hasTransitionCondition"
PROP_SENDER = "hasSender"
PROP_RECEIVER = "hasReceiver"
PROP_MESSAGE_TYPE = "hasMessageType"
PROP_REQUIRES_EXCHANGE = "requiresPerformedMessageExchange"
PROP_SENT_TO = "requiresMessageSentTo"
PROP_SENT_FROM = "requiresMessageSentFrom"
PROP_TIMEOUT = "hasDurationTimeOutTime"

# Project extension properties
EXT_IS_START_SUBJECT = "isStartSubject"
EXT_PAYLOAD_FIELDS = "payloadFieldsJson"
EXT_VIA_INCOMING = "viaIncomingFlowId"
EXT_VIA_OUTGOING = "viaOutgoingFlowId"
