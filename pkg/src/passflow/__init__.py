"""BPMN <-> PASS translation and a subject-oriented workflow engine.

The package is organized along the pipeline:

- ``passflow.bpmn``: parse and serialize the supported BPMN 2.0 XML subset.
- ``passflow.passmodel``: the PASS domain model (SID + SBDs), validation,
  and the OWL/RDF storage format.
- ``passflow.translate``: element-by-element translation between the two
  notations via an enriched intermediate model.
- ``passflow.compiler``: compile a PASS model into serializable per-subject
  behavior programs interpreted by the runtime.
- ``passflow.runtime``: the actor runtime (director, IO actor, input pools,
  timers, deterministic scheduling).
- ``passflow.service``: model store, instance lifecycle, task brokering,
  scripted runs, and the HTTP API.
- ``passflow.cli``: the ``passflow`` command-line entry point.
"""

__version__ = "0.1.0"
