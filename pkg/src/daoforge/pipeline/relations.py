"""Relation-extraction output: entities, semantic roles and action frames."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Entity:
    span: tuple[int, int]
    kind: str  # token, number, address, network, protocol, contract
    value: str  # canonical spelling: symbol, decimal text, lowercase hex, network name, family, role
    text: str = ""


@dataclass(frozen=True)
class ActionFrame:
    """One registry action recognized in the utterance, with entity bindings."""

    action: str
    family: str
    intent: str
    network: str | None
    chain_id: int | None
    args: tuple[tuple[str, int], ...]  # (parameter name, entity index)
    params: tuple[str, ...]  # every parameter of the action, bound or not
    token: int | None = None  # entity naming the protocol instance, for token-level actions
    needs_token: bool = False

    @property
    def missing(self) -> tuple[str, ...]:
        bound = {p for p, _ in self.args}
        out = tuple(p for p in self.params if p not in bound)
        if self.needs_token and self.token is None:
            out += ("$token",)
        return out

    @property
    def complete(self) -> bool:
        return not self.missing

    def entity_for(self, param: str) -> int | None:
        for p, i in self.args:
            if p == param:
                return i
        return None


@dataclass(frozen=True)
class LabeledUtterance:
    original: str
    normalized: str
    intent: str | None = None
    entities: tuple[Entity, ...] = ()
    roles: tuple[tuple[int, str], ...] = ()
    frames: tuple[ActionFrame, ...] = ()
    network: str | None = None
    protocol: str | None = None
    polarity: bool = True

    def __post_init__(self):
        n = len(self.original)
        for e in self.entities:
            lo, hi = e.span
            if not 0 <= lo <= hi <= n:
                raise ValueError(f"entity span {e.span} outside the utterance")
        seen = set()
        for i, _ in self.roles:
            if i in seen:
                raise ValueError(f"entity {i} has two roles")
            seen.add(i)

    def role_of(self, index: int) -> str | None:
        for i, r in self.roles:
            if i == index:
                return r
        return None

    def entities_with_role(self, role: str) -> list[Entity]:
        return [self.entities[i] for i, r in self.roles if r == role]

    def to_obj(self) -> dict[str, Any]:
        return {
            "original": self.original,
            "normalized": self.normalized,
            "intent": self.intent,
            "polarity": self.polarity,
            "network": self.network,
            "protocol": self.protocol,
            "entities": [{"span": list(e.span), "kind": e.kind, "value": e.value, "text": e.text}
                         for e in self.entities],
            "roles": [[i, r] for i, r in self.roles],
            "frames": [
                {
                    "action": f.action,
                    "family": f.family,
                    "intent": f.intent,
                    "network": f.network,
                    "chainId": f.chain_id,
                    "args": [[p, i] for p, i in f.args],
                    "params": list(f.params),
                    "token": f.token,
                    "needsToken": f.needs_token,
                }
                for f in self.frames
            ],
        }

    @classmethod
    def from_obj(cls, obj: dict[str, Any]) -> "LabeledUtterance":
        entities = tuple(Entity(tuple(e["span"]), e["kind"], e["value"], e.get("text", ""))
                         for e in obj.get("entities", []))
        frames = tuple(
            ActionFrame(
                f["action"],
                f["family"],
                f["intent"],
                f.get("network"),
                f.get("chainId"),
                tuple((p, int(i)) for p, i in f.get("args", [])),
                tuple(f.get("params", [])),
                f.get("token"),
                bool(f.get("needsToken", False)),
            )
            for f in obj.get("frames", [])
        )
        return cls(
            obj.get("original", ""),
            obj.get("normalized", ""),
            obj.get("intent"),
            entities,
            tuple((int(i), r) for i, r in obj.get("roles", [])),
            frames,
            obj.get("network"),
            obj.get("protocol"),
            bool(obj.get("polarity", True)),
        )
