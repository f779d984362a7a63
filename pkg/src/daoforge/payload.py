"""Transaction calls and proposal payloads, plus their JSON form.

JSON mirrors the field names governance tooling uses::

    [{"address": "0x..", "value": "0", "functionSig": "f(address)", "payload": "0x.." | [...]}]

A bridge wrapper call carries its inner calls as a nested list instead of hex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Union

from .abi.codec import FunctionSig, decode_args, encode_args, parse_signature
from .ast import Value
from .errors import DaoForgeError, DecodeError


@dataclass(frozen=True)
class Call:
    address: bytes
    sig: FunctionSig
    payload: Union[bytes, tuple["Call", ...]]
    value: int = 0
    # leading wrapper arguments of a bridge call; not part of the JSON form
    prefix_args: tuple[Value, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.address) != 20:
            raise ValueError("call address must be 20 bytes")
        if isinstance(self.payload, list):
            object.__setattr__(self, "payload", tuple(self.payload))

    @property
    def nested(self) -> bool:
        return isinstance(self.payload, tuple)

    def args(self) -> list[Value]:
        """Decoded arguments of a non-wrapper call."""
        if self.nested:
            raise DecodeError("bridge wrapper payload is a call list, not encoded arguments")
        return decode_args(self.sig.kinds, self.payload)

    def calldata(self) -> bytes:
        """Selector plus encoded arguments, as the executor would submit it."""
        if not self.nested:
            return self.sig.selector + self.payload
        if len(self.prefix_args) != len(self.sig.kinds) - 1:
            raise DaoForgeError("wrapper call lacks its bridge parameters")
        inner = Value("bytes", encode_bundle(self.payload))
        return self.sig.selector + encode_args([*self.prefix_args, inner])

    def to_obj(self) -> dict[str, Any]:
        payload: Any
        if self.nested:
            payload = [c.to_obj() for c in self.payload]
        else:
            payload = "0x" + self.payload.hex()
        return {
            "address": "0x" + self.address.hex(),
            "value": str(self.value),
            "functionSig": self.sig.canonical,
            "payload": payload,
        }

    @classmethod
    def from_obj(cls, obj: dict[str, Any]) -> "Call":
        try:
            addr_text = obj["address"]
            if not (isinstance(addr_text, str) and addr_text[:2].lower() == "0x" and len(addr_text) == 42):
                raise DecodeError(f"bad call address {addr_text!r}")
            address = bytes.fromhex(addr_text[2:])
            sig = parse_signature(obj["functionSig"])
            raw = obj["payload"]
            if isinstance(raw, list):
                payload: Union[bytes, tuple] = tuple(cls.from_obj(c) for c in raw)
            else:
                text = "".join(str(raw).split())
                if not text[:2].lower() == "0x":
                    raise DecodeError("payload hex must start with 0x")
                payload = bytes.fromhex(text[2:])
            value = int(str(obj.get("value", "0")), 0)
        except (KeyError, TypeError, ValueError) as exc:
            raise DecodeError(f"malformed call object: {exc}") from exc
        return cls(address, sig, payload, value)


@dataclass(frozen=True)
class ProposalPayload:
    calls: tuple[Call, ...] = ()

    def __iter__(self):
        return iter(self.calls)

    def __len__(self):
        return len(self.calls)

    def to_obj(self) -> list[dict[str, Any]]:
        return [c.to_obj() for c in self.calls]

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_obj(), indent=indent)

    @classmethod
    def from_obj(cls, obj: Iterable[dict[str, Any]]) -> "ProposalPayload":
        if not isinstance(obj, list):
            raise DecodeError("payload JSON must be a list of calls")
        return cls(tuple(Call.from_obj(o) for o in obj))

    @classmethod
    def from_json(cls, text: str) -> "ProposalPayload":
        try:
            obj = json.loads(text)
        except ValueError as exc:
            raise DecodeError(f"payload is not JSON: {exc}") from exc
        return cls.from_obj(obj)

    def flatten(self) -> list[Call]:
        """Every leaf call, wrapper contents inlined in order."""
        out: list[Call] = []
        for c in self.calls:
            out.extend(ProposalPayload(c.payload).flatten() if c.nested else [c])
        return out


# nested-call bundle: one abi-encoded (address,uint256,string,bytes) tuple per call
_BUNDLE_KINDS = ("address", "uint256", "string", "bytes")


def encode_bundle(calls: Iterable[Call]) -> bytes:
    out = bytearray()
    for c in calls:
        if c.nested:
            raise DaoForgeError("bridge calls cannot be nested inside a bridge call")
        out += encode_args([
            Value("address", c.address),
            Value("uint256", c.value),
            Value("string", c.sig.canonical),
            Value("bytes", c.payload),
        ])
    return bytes(out)


def decode_bundle(data: bytes) -> list[Call]:
    calls = []
    pos = 0
    while pos < len(data):
        if len(data) - pos < 6 * 32:
            raise DecodeError("truncated call bundle")
        # tuple length is fixed by the two dynamic lengths in its tail
        sig_len = int.from_bytes(data[pos + 128:pos + 160], "big")
        sig_end = 160 + sig_len + (-sig_len % 32)
        if pos + sig_end + 32 > len(data):
            raise DecodeError("truncated call bundle")
        body_len = int.from_bytes(data[pos + sig_end:pos + sig_end + 32], "big")
        size = sig_end + 32 + body_len + (-body_len % 32)
        addr, value, sig, body = decode_args(_BUNDLE_KINDS, data[pos:pos + size])
        calls.append(Call(addr.data, parse_signature(sig.data), body.data, value.data))
        pos += size
    return calls
