"""Declarative state-delta simulation of proposal payloads.

A state model maps function signatures to write rules. Each rule names the
contract, subject and parameter it writes and where the value comes from.
Calls to a bridge inbox recurse into their nested calls on the target chain.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping

from ..abi.codec import parse_signature
from ..ast import Value
from ..errors import DaoForgeError, SimulationUnsupported

Key = tuple[int, str, str, str]  # chain, contract, subject, parameter


@dataclass(frozen=True)
class WriteRule:
    contract: str  # "target" or "arg:N"
    subject: str  # "target", "arg:N" or a fixed role name
    param: str
    value: str  # "arg:N" or "target"
    op: str = "set"  # set, add, sub


@dataclass(frozen=True)
class StateModel:
    home_chain_id: int
    bridges: Mapping[str, int]  # inbox address (lowercase hex) -> target chain
    rules: Mapping[str, tuple[WriteRule, ...]]  # canonical signature -> writes


def load_state_model(source: str | Path | dict) -> StateModel:
    if isinstance(source, dict):
        raw = source
    else:
        try:
            raw = json.loads(Path(source).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise DaoForgeError(f"cannot read state model {source}: {exc}") from exc
    rules = {}
    for sig, writes in raw.get("rules", {}).items():
        canonical = parse_signature(sig).canonical
        rules[canonical] = tuple(
            WriteRule(w["contract"], w["subject"], w["param"], w["value"], w.get("op", "set")) for w in writes
        )
    bridges = {a.lower(): int(c) for a, c in raw.get("bridges", {}).items()}
    return StateModel(int(raw.get("homeChainId", 1)), bridges, rules)


class StateDelta:
    """Final write set; iteration and serialization are key-sorted."""

    def __init__(self, entries: Mapping[Key, Value] | None = None):
        self.entries: dict[Key, Value] = dict(entries or {})

    def keys(self) -> set[Key]:
        return set(self.entries)

    def __eq__(self, other):
        return isinstance(other, StateDelta) and self.entries == other.entries

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(sorted(self.entries))

    def __getitem__(self, key: Key) -> Value:
        return self.entries[key]

    def to_obj(self) -> list[dict[str, Any]]:
        return [
            {"chain": k[0], "contract": k[1], "subject": k[2], "param": k[3], "kind": self.entries[k].kind,
             "value": self.entries[k].literal()}
            for k in self
        ]

    def __repr__(self):
        return f"StateDelta({self.to_obj()!r})"


def _ref(ref: str, target: bytes, args: list[Value]):
    if ref == "target":
        return Value("address", target)
    if ref.startswith("arg:"):
        i = int(ref[4:])
        if i >= len(args):
            raise SimulationUnsupported(f"rule refers to missing argument {i}")
        return args[i]
    return ref


def _key_part(v) -> str:
    if isinstance(v, Value):
        return v.literal() if v.kind == "address" else f"{v.kind}:{v.literal()}"
    return str(v)


def _apply(call, chain: int, model: StateModel, out: dict[Key, Value]):
    if call.nested:
        target_chain = model.bridges.get("0x" + call.address.hex())
        if target_chain is None:
            raise SimulationUnsupported(f"0x{call.address.hex()} is not a known bridge inbox")
        for inner in call.payload:
            if inner.nested:
                raise SimulationUnsupported("nested bridge messages are not modelled")
            _apply(inner, target_chain, model, out)
        return
    rules = model.rules.get(call.sig.canonical)
    if rules is None:
        raise SimulationUnsupported(f"no state rule for {call.sig.canonical}")
    args = call.args()  # DecodeError propagates: the payload is invalid
    for r in rules:
        key = (
            chain,
            _key_part(_ref(r.contract, call.address, args)),
            _key_part(_ref(r.subject, call.address, args)),
            r.param,
        )
        value = _ref(r.value, call.address, args)
        if not isinstance(value, Value):
            raise SimulationUnsupported(f"rule value {r.value!r} is not a reference")
        if r.op == "set":
            out[key] = value
        elif r.op in ("add", "sub"):
            prev = out.get(key, Value("int256", 0)).data
            step = value.data if r.op == "add" else -value.data
            out[key] = Value("int256", prev + step)
        else:
            raise SimulationUnsupported(f"unknown write op {r.op!r}")


def simulate(payload, model: StateModel) -> StateDelta:
    out: dict[Key, Value] = {}
    for call in payload.calls:
        _apply(call, model.home_chain_id, model, out)
    return StateDelta(out)
