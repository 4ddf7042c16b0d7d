"""Opaque actor addresses, stable for an actor's lifetime."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ActorAddress:
    system: str
    serial: int

    def __str__(self) -> str:
        return f"{self.system}/{self.serial}"

    def to_json(self) -> dict:
        return {"system": self.system, "serial": self.serial}

    @classmethod
    def from_json(cls, data: dict) -> "ActorAddress":
        return cls(system=data["system"], serial=int(data["serial"]))
