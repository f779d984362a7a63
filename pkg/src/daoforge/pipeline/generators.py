"""Program generators behind one ``complete(prompt) -> text`` interface."""

from __future__ import annotations

import re
from decimal import Decimal, InvalidOperation
from typing import Protocol, Sequence

import requests

from ..ast import Assignment, Constant, Identifier, NetworkLit, Program, ProtocolLit, Transaction, Value, pretty_print
from ..errors import DaoForgeError, ProviderError
from ..registry import Registry
from .prompt import request_labels
from .relations import ActionFrame, LabeledUtterance


class Generator(Protocol):
    identity: str

    def complete(self, prompt: str) -> str: ...


_FENCE = re.compile(r"```[a-zA-Z]*\n(.*?)```", re.S)


def program_text(reply: str) -> str:
    """Strip a code fence from a generator reply, if there is one."""
    m = _FENCE.search(reply)
    return m.group(1) if m else reply


class ScriptedGenerator:
    """Replays fixed replies in order; the last one repeats."""

    identity = "scripted"

    def __init__(self, replies: Sequence[str]):
        if not replies:
            raise ValueError("scripted generator needs at least one reply")
        self.replies = list(replies)
        self.calls = 0
        self.prompts: list[str] = []

    def complete(self, prompt: str) -> str:
        self.prompts.append(prompt)
        reply = self.replies[min(self.calls, len(self.replies) - 1)]
        self.calls += 1
        return reply


class LiveGenerator:
    """Chat-completion HTTP endpoint."""

    def __init__(self, url: str, model: str, api_key: str, timeout: float = 60.0):
        self.url, self.model, self.api_key, self.timeout = url, model, api_key, timeout
        self.identity = f"live:{model}"

    def complete(self, prompt: str) -> str:
        body = {"model": self.model, "temperature": 0, "messages": [{"role": "user", "content": prompt}]}
        try:
            resp = requests.post(self.url, json=body, timeout=self.timeout,
                                 headers={"Authorization": f"Bearer {self.api_key}"})
            resp.raise_for_status()
            return resp.json()["choices"][0]["message"]["content"]
        except (requests.RequestException, KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderError(f"generator request failed: {exc}") from exc


class _CannotFill(DaoForgeError):
    pass


def _number(text: str, scale: int) -> int:
    try:
        if text.endswith("%"):
            d = Decimal(text[:-1]) / 100
        else:
            d = Decimal(text)
    except InvalidOperation as exc:
        raise _CannotFill(f"bad number {text!r}") from exc
    d = d.scaleb(scale)
    if d != d.to_integral_value():
        raise _CannotFill(f"{text} is not a whole number at scale {scale}")
    return int(d)


class TemplateGenerator:
    """Deterministic stand-in for a language model.

    Reads the labels block of the prompt and writes the canonical program for
    frames that fully match a registry action. Returns a comment-only reply
    when it cannot, which fails validation downstream.
    """

    identity = "template"

    def __init__(self, registry: Registry):
        self.registry = registry

    def complete(self, prompt: str) -> str:
        obj = request_labels(prompt)
        if obj is None:
            return "# no request labels in prompt\n"
        labeled = LabeledUtterance.from_obj(obj)
        try:
            return pretty_print(self.program(labeled)) + "\n"
        except _CannotFill as exc:
            return f"# cannot write a program: {exc}\n"

    def _chain(self, f: ActionFrame) -> int:
        return f.chain_id if f.chain_id is not None else self.registry.home_chain_id

    def _protocol(self, f: ActionFrame, chain: int):
        fam = [p for p in self.registry.protocols.values() if p.family == f.family]
        here = [p for p in fam if p.chain_id == chain]
        if not (here or fam):
            raise _CannotFill(f"no protocol of family {f.family}")
        return (here or fam)[0]

    def program(self, labeled: LabeledUtterance) -> Program:
        if not labeled.frames:
            raise _CannotFill("no action recognized")
        for f in labeled.frames:
            if not f.complete:
                raise _CannotFill(f"{f.action} lacks {', '.join(f.missing)}")
        reg = self.registry
        assigns: list[Assignment] = []
        bound: dict[str, object] = {}

        def bind(base: str, value) -> str:
            name, n = base, 1
            while name in bound and bound[name] != value:
                n += 1
                name = f"{base}{n}"
            if name not in bound:
                bound[name] = value
                assigns.append(Assignment(name, value if not isinstance(value, Value) else Constant(value)))
            return name

        txs: list[Transaction] = []
        for f in labeled.frames:
            chain = self._chain(f)
            action = reg.actions[f.family][f.action]
            args = []
            for p in action.params:
                ent = labeled.entities[f.entity_for(p.name)]
                if p.kind == "address":
                    value = self._address(ent, chain)
                    args.append(Identifier(bind(p.var or p.name, value)))
                elif ent.kind == "number":
                    args.append(Constant(Value.uint(_number(ent.value, p.scale))))
                else:
                    raise _CannotFill(f"{p.name} needs a {p.kind}, got {ent.kind}")
            net_name = f.network or reg.chain_names.get(chain, f"chain{chain}")
            net_var = bind(reg.chain_vars.get(chain, net_name), NetworkLit(chain))
            if action.protocol_entity == "token":
                proto_ref = labeled.entities[f.token].value
            else:
                proto = self._protocol(f, chain)
                first = next(iter(proto.roles.values()))
                proto_ref = bind(proto.var or proto.family, ProtocolLit((Value("address", first),)))
            txs.append(Transaction(net_var, proto_ref, f.action, tuple(args)))
        return Program(tuple(assigns) + tuple(txs))

    def _address(self, ent, chain: int) -> Value:
        if ent.kind == "address":
            return Value.address(ent.value)
        if ent.kind == "token":
            addr = self.registry.token_address(chain, ent.value)
            if addr is None:
                raise _CannotFill(f"token {ent.value} is not known on chain {chain}")
            return Value("address", addr)
        raise _CannotFill(f"{ent.value!r} is not an address")
