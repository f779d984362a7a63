"""Head/tail ABI encoding for flat tuples of static and dynamic (bytes, string) kinds."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from ..ast import Value, canonical_kind, fixed_bytes_len, int_bounds, is_dynamic, is_integer_kind
from ..errors import DecodeError, Malformed
from .keccak import keccak256

WORD = 32


@dataclass(frozen=True)
class FunctionSig:
    name: str
    kinds: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "kinds", tuple(canonical_kind(k) for k in self.kinds))

    @property
    def canonical(self) -> str:
        return canonical_signature(self.name, self.kinds)

    @property
    def selector(self) -> bytes:
        return selector(self.canonical)

    def __str__(self):
        return self.canonical


def canonical_signature(name: str, kinds: Sequence[str]) -> str:
    if not name:
        raise Malformed("function name must be nonempty")
    return f"{name}({','.join(canonical_kind(k) for k in kinds)})"


_SIG_RE = re.compile(r"^\s*([A-Za-z_$][A-Za-z0-9_$]*)\s*\((.*)\)\s*$", re.S)


def parse_signature(text: str) -> FunctionSig:
    """Parse ``name(type,...)``; whitespace and line breaks are tolerated."""
    m = _SIG_RE.match(text)
    if not m:
        raise Malformed(f"bad function signature {text!r}")
    body = re.sub(r"\s+", "", m.group(2))
    kinds = body.split(",") if body else []
    return FunctionSig(m.group(1), tuple(kinds))


def selector(canonical: str) -> bytes:
    """First four bytes of keccak-256 over the signature text."""
    return keccak256(canonical.encode("ascii"))[:4]


def _pad_right(data: bytes) -> bytes:
    return data + b"\x00" * (-len(data) % WORD)


def _static_word(v: Value) -> bytes:
    if v.kind == "address":
        return b"\x00" * 12 + v.data
    if v.kind == "bool":
        return int(v.data).to_bytes(WORD, "big")
    if is_integer_kind(v.kind):
        return (v.data % (1 << 256)).to_bytes(WORD, "big")
    return v.data.ljust(WORD, b"\x00")


def _dynamic_body(v: Value) -> bytes:
    data = v.data.encode("utf-8") if v.kind == "string" else v.data
    return len(data).to_bytes(WORD, "big") + _pad_right(data)


def encode_args(values: Sequence[Value]) -> bytes:
    """Encode a tuple: static kinds inline, dynamic kinds via offset + tail."""
    head_size = WORD * len(values)
    heads: list[bytes] = []
    tails: list[bytes] = []
    tail_len = 0
    for v in values:
        if is_dynamic(v.kind):
            heads.append((head_size + tail_len).to_bytes(WORD, "big"))
            body = _dynamic_body(v)
            tails.append(body)
            tail_len += len(body)
        else:
            heads.append(_static_word(v))
    return b"".join(heads) + b"".join(tails)


def encode_call(sig: FunctionSig | str, values: Sequence[Value]) -> bytes:
    """Selector followed by the encoded arguments."""
    if isinstance(sig, str):
        sig = parse_signature(sig)
    if len(sig.kinds) != len(values):
        raise Malformed(f"{sig.canonical} takes {len(sig.kinds)} arguments, got {len(values)}")
    return sig.selector + encode_args(values)


def _decode_static(kind: str, word: bytes) -> Value:
    n = int.from_bytes(word, "big")
    if kind == "address":
        if word[:12] != b"\x00" * 12:
            raise DecodeError("nonzero padding in address word")
        return Value("address", word[12:])
    if kind == "bool":
        if n > 1:
            raise DecodeError("bool word is neither 0 nor 1")
        return Value("bool", n == 1)
    if is_integer_kind(kind):
        lo, hi = int_bounds(kind)
        if kind.startswith("int") and n >= 1 << 255:
            n -= 1 << 256
        if not lo <= n < hi:
            raise DecodeError(f"word does not fit in {kind}")
        return Value(kind, n)
    size = fixed_bytes_len(kind)
    if any(word[size:]):
        raise DecodeError(f"nonzero padding after {kind}")
    return Value(kind, word[:size])


def decode_args(kinds: Sequence[str], data: bytes) -> list[Value]:
    """Inverse of :func:`encode_args`.

    Only the canonical layout is accepted: offsets must point at consecutive
    tails, padding must be zero and no trailing bytes may remain.
    """
    kinds = [canonical_kind(k) for k in kinds]
    data = bytes(data)
    head_size = WORD * len(kinds)
    if len(data) < head_size:
        raise DecodeError(f"need {head_size} head bytes, got {len(data)}")
    out: list[Value] = []
    expected_offset = head_size
    for i, kind in enumerate(kinds):
        word = data[WORD * i:WORD * (i + 1)]
        if not is_dynamic(kind):
            out.append(_decode_static(kind, word))
            continue
        offset = int.from_bytes(word, "big")
        if offset != expected_offset:
            raise DecodeError(f"offset {offset} for argument {i} is out of place (expected {expected_offset})")
        if offset + WORD > len(data):
            raise DecodeError("offset points past the end of data")
        length = int.from_bytes(data[offset:offset + WORD], "big")
        start = offset + WORD
        end = start + length
        padded_end = start + length + (-length % WORD)
        if padded_end > len(data):
            raise DecodeError("dynamic value runs past the end of data")
        if any(data[end:padded_end]):
            raise DecodeError("nonzero padding after dynamic value")
        raw = data[start:end]
        if kind == "string":
            try:
                out.append(Value("string", raw.decode("utf-8")))
            except UnicodeDecodeError as exc:
                raise DecodeError("string is not valid UTF-8") from exc
        else:
            out.append(Value("bytes", raw))
        expected_offset = padded_end
    if expected_offset != len(data):
        raise DecodeError(f"{len(data) - expected_offset} trailing bytes after arguments")
    return out


def encoded_length(values: Sequence[Value]) -> int:
    """Byte length of ``encode_args(values)`` without building it."""
    n = WORD * len(values)
    for v in values:
        if is_dynamic(v.kind):
            size = len(v.data.encode("utf-8")) if v.kind == "string" else len(v.data)
            n += WORD + size + (-size % WORD)
    return n
