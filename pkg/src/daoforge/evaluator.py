"""Symbolic evaluation of DAOLang programs into proposal payloads.

State is the triple (program counter, store, output). Assignments extend the
store, last write wins. Each transaction resolves its action into calls
through the registry. Consecutive transactions on the same chain form one
network group, and groups on a bridge network are wrapped into a single
bridge call.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Union

from .ast import (
    Assignment,
    Constant,
    Expr,
    ExpressionStmt,
    Identifier,
    NetworkLit,
    ObjectLit,
    Program,
    ProtocolLit,
    Transaction,
    Value,
    fixed_bytes_len,
    int_bounds,
    is_integer_kind,
)
from .errors import (
    ArityMismatch,
    EmptyBridgePayload,
    TypeMismatch,
    UnboundIdentifier,
    UnknownAction,
    UnknownNetwork,
    UnknownProtocol,
)
from .payload import Call, ProposalPayload
from .registry import Action, Binding, Protocol, Registry
from .abi.codec import encode_args

# what the store can hold
StoreValue = Union[Value, NetworkLit, ProtocolLit, dict]


@dataclass
class EvalState:
    pc: int = 0
    store: dict[str, StoreValue] = field(default_factory=dict)
    output: list[Call] = field(default_factory=list)


def eval_expr(expr: Expr, store: dict[str, StoreValue]) -> StoreValue:
    if isinstance(expr, Constant):
        return expr.value
    if isinstance(expr, Identifier):
        if expr.name not in store:
            raise UnboundIdentifier(f"identifier {expr.name!r} is not bound")
        return store[expr.name]
    if isinstance(expr, ObjectLit):
        return {k: eval_expr(v, store) for k, v in expr.pairs}
    if isinstance(expr, (NetworkLit, ProtocolLit)):
        return expr
    raise TypeError(f"not an expression: {expr!r}")


def coerce(v: StoreValue, kind: str, what: str = "argument") -> Value:
    """Convert an evaluated value to ``kind`` or raise :class:`TypeMismatch`."""
    if not isinstance(v, Value):
        raise TypeMismatch(f"{what} expects {kind}, got {type(v).__name__}")
    if v.kind == kind:
        return v
    if is_integer_kind(kind) and is_integer_kind(v.kind):
        lo, hi = int_bounds(kind)
        if not lo <= v.data < hi:
            raise TypeMismatch(f"{what}: {v.data} does not fit in {kind}")
        return Value(kind, v.data)
    n = fixed_bytes_len(kind)
    if n is not None and v.kind in ("bytes",) and len(v.data) == n:
        return Value(kind, v.data)
    raise TypeMismatch(f"{what} expects {kind}, got {v.kind}")


def _protocol_addresses(v: StoreValue) -> tuple[bytes, ...]:
    return tuple(a.data for a in v.addresses)


def _arg_value(args: Sequence[StoreValue], b: Binding, action: str) -> StoreValue:
    v = args[b.index]
    if b.field is not None:
        if not isinstance(v, dict) or b.field not in v:
            raise TypeMismatch(f"{action}: argument {b.index} needs an object with field {b.field!r}")
        v = v[b.field]
    return v


def resolve_action(
    registry: Registry,
    protocol: Protocol | str,
    action_name: str,
    args: Sequence[StoreValue],
    self_address: bytes | None = None,
) -> list[Call]:
    """Expand one action into its calls, one per template, args ABI-encoded."""
    if isinstance(protocol, str):
        proto = registry.protocols.get(protocol) or registry.protocol_by_name(protocol)
        if proto is None:
            raise UnknownProtocol(f"protocol {protocol!r} is not in the registry")
    else:
        proto = protocol
    action: Action | None = registry.actions_for(proto).get(action_name)
    if action is None:
        raise UnknownAction(f"action {action_name!r} is not defined for protocol {proto.name!r}")
    if len(args) != len(action.params):
        raise ArityMismatch(f"{action_name} takes {len(action.params)} arguments, got {len(args)}")
    for p, a in zip(action.params, args):
        if not isinstance(a, dict):
            coerce(a, p.kind, f"{action_name} parameter {p.name!r}")
    calls = []
    for t in action.templates:
        if t.target_role == "$self":
            target = self_address if self_address is not None else next(iter(proto.roles.values()))
        else:
            target = proto.roles[t.target_role]
        values = []
        for kind, b in zip(t.sig.kinds, t.bindings):
            what = f"{action_name} -> {t.sig.name}"
            if b.source == "arg":
                values.append(coerce(_arg_value(args, b, action_name), kind, what))
            elif b.source == "table":
                key = coerce(_arg_value(args, b, action_name), "address", what).data
                table = proto.tables[b.table]
                if key not in table:
                    raise TypeMismatch(f"{what}: 0x{key.hex()} has no entry in {proto.name}.{b.table}")
                values.append(coerce(Value("address", table[key]), kind, what))
            elif b.source == "role":
                values.append(coerce(Value("address", proto.roles[b.role]), kind, what))
            else:
                values.append(coerce(b.value, kind, what))
        calls.append(Call(target, t.sig, encode_args(values)))
    return calls


def wrap_cross_chain(registry: Registry, chain_id: int, calls: Sequence[Call]) -> list[Call]:
    """Pass home-chain calls through; wrap bridge-network calls in one bridge call."""
    if chain_id == registry.home_chain_id:
        return list(calls)
    bridge = registry.networks.get(chain_id)
    if bridge is None:
        raise UnknownNetwork(f"chain {chain_id} is neither the home chain nor a bridge network")
    if not calls:
        raise EmptyBridgePayload(f"nothing to send to chain {chain_id}")
    return [Call(bridge.inbox, bridge.wrapper_sig, tuple(calls), 0, bridge.params)]


def _resolve_network(registry: Registry, name: str, store) -> int:
    if name in store:
        v = store[name]
        if not isinstance(v, NetworkLit):
            raise TypeMismatch(f"{name!r} is used as a network but holds {type(v).__name__}")
        chain = v.chain_id
    else:
        chain = registry.chain_id_for(name)
        if chain is None:
            raise UnboundIdentifier(f"network {name!r} is not bound")
    if not registry.is_known_chain(chain):
        raise UnknownNetwork(f"chain {chain} is not a valid network")
    return chain


def _resolve_protocol(registry: Registry, name: str, chain: int, store) -> tuple[Protocol, bytes | None]:
    if name in store:
        v = store[name]
        if not isinstance(v, ProtocolLit):
            raise TypeMismatch(f"{name!r} is used as a protocol but holds {type(v).__name__}")
        addrs = _protocol_addresses(v)
        proto = registry.protocol_for_addresses(chain, addrs)
        if proto is None:
            shown = ",".join("0x" + a.hex() for a in addrs)
            raise UnknownProtocol(f"protocol{{{shown}}} is not a valid protocol on chain {chain}")
        return proto, addrs[0]
    proto = registry.protocol_by_name(name, chain)
    if proto is not None:
        return proto, None
    proto, addr = registry.protocol_by_role(name, chain)
    if proto is None:
        raise UnknownProtocol(f"protocol {name!r} is not a valid protocol on chain {chain}")
    return proto, addr


def eval_transaction(stmt: Transaction, registry: Registry, store) -> tuple[int, list[Call]]:
    chain = _resolve_network(registry, stmt.network, store)
    proto, self_addr = _resolve_protocol(registry, stmt.protocol, chain, store)
    args = [eval_expr(a, store) for a in stmt.args]
    return chain, resolve_action(registry, proto, stmt.action, args, self_addr)


def eval_program(program: Program, registry: Registry) -> ProposalPayload:
    state = EvalState()
    group_chain: int | None = None
    group: list[Call] = []

    def flush():
        nonlocal group_chain, group
        if group_chain is not None:
            state.output.extend(wrap_cross_chain(registry, group_chain, group))
        group_chain, group = None, []

    for state.pc, stmt in enumerate(program.statements):
        if isinstance(stmt, Assignment):
            flush()
            state.store[stmt.name] = eval_expr(stmt.expr, state.store)
        elif isinstance(stmt, ExpressionStmt):
            flush()
            eval_expr(stmt.expr, state.store)
        else:
            chain, calls = eval_transaction(stmt, registry, state.store)
            if chain != group_chain:
                flush()
                group_chain = chain
            group.extend(calls)
    flush()
    return ProposalPayload(tuple(state.output))


def program_actions(program: Program, registry: Registry) -> list[tuple[int, Protocol, Action]]:
    """(chain, protocol, action) for every transaction, without encoding arguments."""
    store: dict[str, StoreValue] = {}
    out = []
    for stmt in program.statements:
        if isinstance(stmt, Assignment):
            store[stmt.name] = eval_expr(stmt.expr, store)
        elif isinstance(stmt, Transaction):
            chain = _resolve_network(registry, stmt.network, store)
            proto, _ = _resolve_protocol(registry, stmt.protocol, chain, store)
            action = registry.actions_for(proto).get(stmt.action)
            if action is None:
                raise UnknownAction(f"action {stmt.action!r} is not defined for protocol {proto.name!r}")
            out.append((chain, proto, action))
    return out
