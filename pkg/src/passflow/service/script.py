"""Interaction scripts: a headless stand-in for the human user.

A script is an ordered rule list; each rule matches pending tasks by subject
and state label and supplies the choice and/or field values to submit. Rules
are consumed in order, each up to its repeat count. File form (JSON):

    {"rules": [
        {"subject": "Company", "state": "Decide", "choice": "invite",
         "values": {"comment": "ok"}, "repeat": 1}
    ]}

Omitting "subject" or "state" makes the rule match any value there.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class ScriptAction:
    choice: str | None = None
    values: dict = field(default_factory=dict)


@dataclass
class ScriptRule:
    subject: str | None = None
    state: str | None = None
    choice: str | None = None
    values: dict = field(default_factory=dict)
    repeat: int = 1

    def matches(self, context: dict) -> bool:
        if self.repeat <= 0:
            return False
        if self.subject is not None and context.get("subjectLabel") != self.subject:
            return False
        if self.state is not None and context.get("stateLabel") != self.state:
            return False
        return True


class InteractionScript:
    def __init__(self, rules: list[ScriptRule]):
        self.rules = list(rules)

    def match(self, context: dict) -> ScriptAction | None:
        """First rule (in order) with remaining uses matching the context."""
        for rule in self.rules:
            if rule.matches(context):
                rule.repeat -= 1
                return ScriptAction(choice=rule.choice, values=dict(rule.values))
        return None

    @classmethod
    def from_json(cls, doc: dict) -> "InteractionScript":
        rules = []
        for entry in doc.get("rules", []):
            rules.append(
                ScriptRule(
                    subject=entry.get("subject"),
                    state=entry.get("state"),
                    choice=entry.get("choice"),
                    values=dict(entry.get("values", {})),
                    repeat=int(entry.get("repeat", 1)),
                )
            )
        return cls(rules)

    @classmethod
    def from_path(cls, path: str | Path) -> "InteractionScript":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))
