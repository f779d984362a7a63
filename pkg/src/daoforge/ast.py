"""DAOLang syntax tree, Solidity-typed runtime values and the canonical printer."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Union

from .errors import Malformed, OutOfRange

_INT_KIND = re.compile(r"^(u?)int(\d*)$")
_BYTES_KIND = re.compile(r"^bytes(\d+)$")


def canonical_kind(kind: str) -> str:
    """Validate a Solidity value type name and return its canonical spelling.

    ``uint``/``int`` expand to their 256-bit forms. Raises :class:`Malformed`
    for anything outside address, bool, string, bytes, bytesN, uintN, intN.
    """
    kind = kind.strip()
    if kind in ("address", "bool", "string", "bytes"):
        return kind
    m = _INT_KIND.match(kind)
    if m:
        bits = int(m.group(2)) if m.group(2) else 256
        if bits % 8 or not 8 <= bits <= 256:
            raise Malformed(f"invalid integer width in {kind!r}")
        return f"{m.group(1)}int{bits}"
    m = _BYTES_KIND.match(kind)
    if m:
        n = int(m.group(1))
        if not 1 <= n <= 32:
            raise Malformed(f"invalid fixed bytes length in {kind!r}")
        return f"bytes{n}"
    raise Malformed(f"unsupported type {kind!r}")


def int_bounds(kind: str) -> tuple[int, int]:
    """Inclusive lower bound and exclusive upper bound for an integer kind."""
    m = _INT_KIND.match(kind)
    bits = int(m.group(2))
    if m.group(1):
        return 0, 1 << bits
    return -(1 << (bits - 1)), 1 << (bits - 1)


def is_integer_kind(kind: str) -> bool:
    return _INT_KIND.match(kind) is not None


def fixed_bytes_len(kind: str) -> int | None:
    m = _BYTES_KIND.match(kind)
    return int(m.group(1)) if m else None


def is_dynamic(kind: str) -> bool:
    return kind in ("bytes", "string")


@dataclass(frozen=True)
class Value:
    """A Solidity-typed constant.

    ``data`` is ``bytes`` for address/bytes/bytesN, ``int`` for integer kinds,
    ``str`` for string and ``bool`` for bool.
    """

    kind: str
    data: Union[bytes, int, str, bool]

    def __post_init__(self):
        kind = canonical_kind(self.kind)
        object.__setattr__(self, "kind", kind)
        d = self.data
        if kind == "address":
            if not isinstance(d, (bytes, bytearray)) or len(d) != 20:
                raise Malformed("address must be exactly 20 bytes")
            object.__setattr__(self, "data", bytes(d))
        elif kind == "bool":
            if not isinstance(d, bool):
                raise Malformed("bool value must be True or False")
        elif kind == "string":
            if not isinstance(d, str):
                raise Malformed("string value must be text")
        elif kind == "bytes":
            if not isinstance(d, (bytes, bytearray)):
                raise Malformed("bytes value must be a byte string")
            object.__setattr__(self, "data", bytes(d))
        elif is_integer_kind(kind):
            if isinstance(d, bool) or not isinstance(d, int):
                raise Malformed(f"{kind} value must be an integer")
            lo, hi = int_bounds(kind)
            if not lo <= d < hi:
                raise OutOfRange(f"{d} does not fit in {kind}")
        else:
            n = fixed_bytes_len(kind)
            if not isinstance(d, (bytes, bytearray)) or len(d) != n:
                raise Malformed(f"{kind} value must be exactly {n} bytes")
            object.__setattr__(self, "data", bytes(d))

    @classmethod
    def address(cls, text_or_bytes) -> "Value":
        if isinstance(text_or_bytes, str):
            return make_value("address", text_or_bytes)
        return cls("address", bytes(text_or_bytes))

    @classmethod
    def uint(cls, n: int, bits: int = 256) -> "Value":
        return cls(f"uint{bits}", n)

    def literal(self) -> str:
        """Canonical literal text; ``make_value(v.kind, v.literal()) == v``."""
        if self.kind == "bool":
            return "true" if self.data else "false"
        if self.kind == "string":
            return json.dumps(self.data, ensure_ascii=False)
        if isinstance(self.data, bytes):
            return "0x" + self.data.hex()
        return str(self.data)

    def __str__(self):
        return self.literal()


def _parse_int(text: str) -> int:
    t = text.strip()
    neg = t.startswith("-")
    body = t[1:] if neg else t
    if re.fullmatch(r"0[xX][0-9a-fA-F]+", body):
        n = int(body, 16)
    elif re.fullmatch(r"[0-9]+", body):
        n = int(body)
    else:
        raise Malformed(f"bad integer literal {text!r}")
    return -n if neg else n


def _parse_hex(text: str) -> bytes:
    t = text.strip()
    if not re.fullmatch(r"0[xX](?:[0-9a-fA-F]{2})*", t):
        raise Malformed(f"bad hex literal {text!r}")
    return bytes.fromhex(t[2:])


def make_value(kind: str, raw: str) -> Value:
    """Build a range-checked :class:`Value` of ``kind`` from literal text."""
    kind = canonical_kind(kind)
    if kind == "address":
        if not re.fullmatch(r"0[xX][0-9a-fA-F]{40}", raw.strip()):
            raise Malformed(f"address literal must be 0x + 40 hex digits, got {raw!r}")
        return Value(kind, _parse_hex(raw))
    if kind == "bool":
        if raw.strip() not in ("true", "false"):
            raise Malformed(f"bad bool literal {raw!r}")
        return Value(kind, raw.strip() == "true")
    if kind == "string":
        t = raw.strip()
        if len(t) < 2 or t[0] != '"' or t[-1] != '"':
            raise Malformed(f"string literal must be double-quoted, got {raw!r}")
        try:
            text = json.loads(t)
        except ValueError as exc:
            raise Malformed(f"bad string literal {raw!r}") from exc
        return Value(kind, text)
    if is_integer_kind(kind):
        return Value(kind, _parse_int(raw))
    data = _parse_hex(raw)
    n = fixed_bytes_len(kind)
    if n is not None and len(data) != n:
        raise Malformed(f"{kind} literal must have {n} bytes, got {len(data)}")
    return Value(kind, data)


# --------------------------------------------------------------------------
# expressions

@dataclass(frozen=True)
class Identifier:
    name: str


@dataclass(frozen=True)
class Constant:
    value: Value


@dataclass(frozen=True)
class ObjectLit:
    pairs: tuple[tuple[str, "Expr"], ...]

    def __post_init__(self):
        keys = [k for k, _ in self.pairs]
        if len(keys) != len(set(keys)):
            raise Malformed("object literal keys must be unique")


@dataclass(frozen=True)
class NetworkLit:
    chain_id: int

    def __post_init__(self):
        if self.chain_id <= 0:
            raise OutOfRange("chain id must be positive")


@dataclass(frozen=True)
class ProtocolLit:
    addresses: tuple[Value, ...]

    def __post_init__(self):
        if not self.addresses:
            raise Malformed("protocol literal needs at least one address")
        if any(a.kind != "address" for a in self.addresses):
            raise Malformed("protocol literal holds addresses only")


Expr = Union[Identifier, Constant, ObjectLit, NetworkLit, ProtocolLit]

_IDENT = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
RESERVED = frozenset({"network", "protocol", "true", "false"})


def _check_ident(name: str) -> None:
    if not _IDENT.match(name) or name in RESERVED:
        raise Malformed(f"invalid identifier {name!r}")


# --------------------------------------------------------------------------
# statements
# ``pos`` is the (line, column) of the statement's first token, if parsed.

@dataclass(frozen=True)
class ExpressionStmt:
    expr: Expr
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Assignment:
    name: str
    expr: Expr
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        _check_ident(self.name)


@dataclass(frozen=True)
class Transaction:
    network: str
    protocol: str
    action: str
    args: tuple[Expr, ...] = ()
    pos: tuple[int, int] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.action:
            raise Malformed("transaction needs an action name")
        for name in (self.network, self.protocol, self.action):
            _check_ident(name)


Statement = Union[ExpressionStmt, Assignment, Transaction]


@dataclass(frozen=True)
class Program:
    statements: tuple[Statement, ...] = ()

    def transactions(self) -> list[Transaction]:
        return [s for s in self.statements if isinstance(s, Transaction)]


ACTION_CATEGORIES = ("addAct", "updateAct", "operateAct")


@dataclass(frozen=True)
class ActionName:
    name: str
    category: str

    def __post_init__(self):
        if self.category not in ACTION_CATEGORIES:
            raise Malformed(f"unknown action category {self.category!r}")


# --------------------------------------------------------------------------
# printer

def print_expr(e: Expr) -> str:
    if isinstance(e, Identifier):
        return e.name
    if isinstance(e, Constant):
        return e.value.literal()
    if isinstance(e, NetworkLit):
        return f"network{{{e.chain_id}}}"
    if isinstance(e, ProtocolLit):
        return "protocol{" + ",".join(a.literal() for a in e.addresses) + "}"
    if isinstance(e, ObjectLit):
        return "{" + ", ".join(f"{k}: {print_expr(v)}" for k, v in e.pairs) + "}"
    raise TypeError(f"not an expression: {e!r}")


def print_statement(s: Statement) -> str:
    if isinstance(s, Assignment):
        return f"{s.name} <- {print_expr(s.expr)};"
    if isinstance(s, Transaction):
        args = ",".join(print_expr(a) for a in s.args)
        return f"{s.network}({s.protocol}:{s.action}({args}));"
    if isinstance(s, ExpressionStmt):
        return f"{print_expr(s.expr)};"
    raise TypeError(f"not a statement: {s!r}")


def pretty_print(program: Program) -> str:
    """Canonical text: one statement per line, each terminated by ``;``."""
    return "\n".join(print_statement(s) for s in program.statements)
