"""The valid-set registry: protocols, their action templates and bridge networks.

A registry is loaded once from JSON and treated as read-only afterwards.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping

from .abi.codec import FunctionSig, parse_signature
from .ast import ACTION_CATEGORIES, ActionName, Value, canonical_kind, make_value
from .errors import DaoForgeError, RegistryError


def _addr(text: str, where: str) -> bytes:
    try:
        return make_value("address", text).data
    except DaoForgeError as exc:
        raise RegistryError(f"{where}: {exc}") from exc


@dataclass(frozen=True)
class ParamSpec:
    """A user-facing action parameter. ``cues`` drive the rule-based role labeler."""

    name: str
    kind: str
    entity: str = "token"
    cues: tuple[str, ...] = ()
    after: tuple[str, ...] = ()
    var: str | None = None
    scale: int = 0


@dataclass(frozen=True)
class Binding:
    """Where one function argument comes from.

    ``source`` is ``arg`` (nth action argument, optionally one object field),
    ``const`` (registry constant), ``role`` (address of a protocol role) or
    ``table`` (nth argument mapped through a protocol lookup table).
    """

    source: str
    index: int = 0
    field: str | None = None
    value: Value | None = None
    role: str | None = None
    table: str | None = None


@dataclass(frozen=True)
class ActionTemplate:
    target_role: str
    sig: FunctionSig
    bindings: tuple[Binding, ...]


@dataclass(frozen=True)
class Action:
    name: ActionName
    params: tuple[ParamSpec, ...]
    templates: tuple[ActionTemplate, ...]
    keywords: tuple[str, ...] = ()
    intent: str = "update"
    # which utterance entity picks the protocol instance: "protocol" or "token"
    protocol_entity: str = "protocol"


@dataclass(frozen=True)
class Protocol:
    name: str
    family: str
    chain_id: int
    roles: Mapping[str, bytes]
    tables: Mapping[str, Mapping[bytes, bytes]]
    aliases: tuple[str, ...] = ()
    var: str | None = None

    def role_of(self, address: bytes) -> str | None:
        for role, a in self.roles.items():
            if a == address:
                return role
        return None


@dataclass(frozen=True)
class BridgeConfig:
    chain_id: int
    inbox: bytes
    wrapper_sig: FunctionSig
    params: tuple[Value, ...]
    bundle_format: str = "tuple-concat"


@dataclass(frozen=True)
class Registry:
    home_chain_id: int
    protocols: Mapping[str, Protocol]
    actions: Mapping[str, Mapping[str, Action]]
    networks: Mapping[int, BridgeConfig]
    chain_names: Mapping[int, str] = field(default_factory=dict)
    chain_vars: Mapping[int, str] = field(default_factory=dict)
    tokens: Mapping[int, Mapping[str, bytes]] = field(default_factory=dict)

    # ---- lookups
    def chain_id_for(self, name: str) -> int | None:
        for cid, n in self.chain_names.items():
            if n.lower() == name.lower():
                return cid
        return None

    def is_known_chain(self, chain_id: int) -> bool:
        return chain_id == self.home_chain_id or chain_id in self.networks

    def protocol_for_addresses(self, chain_id: int, addresses) -> Protocol | None:
        """First protocol deployed on ``chain_id`` that owns every given address."""
        wanted = [bytes(a) for a in addresses]
        for proto in self.protocols.values():
            if proto.chain_id != chain_id:
                continue
            owned = set(proto.roles.values())
            if all(a in owned for a in wanted):
                return proto
        return None

    def protocol_by_name(self, name: str, chain_id: int | None = None) -> Protocol | None:
        low = name.lower()
        for proto in self.protocols.values():
            if chain_id is not None and proto.chain_id != chain_id:
                continue
            names = {proto.name.lower(), proto.family.lower(), *(a.lower() for a in proto.aliases)}
            if low in names:
                return proto
        return None

    def protocol_by_role(self, role: str, chain_id: int) -> tuple[Protocol | None, bytes | None]:
        """Protocol on ``chain_id`` with a role named ``role`` (e.g. a token symbol)."""
        for proto in self.protocols.values():
            if proto.chain_id != chain_id:
                continue
            for r, a in proto.roles.items():
                if r.lower() == role.lower():
                    return proto, a
        return None, None

    def actions_for(self, proto: Protocol) -> Mapping[str, Action]:
        return self.actions.get(proto.family, {})

    def find_action(self, name: str) -> list[tuple[str, Action]]:
        """All (family, action) pairs with this action name."""
        return [(fam, acts[name]) for fam, acts in self.actions.items() if name in acts]

    def token_address(self, chain_id: int, symbol: str) -> bytes | None:
        table = self.tokens.get(chain_id, {})
        for sym, addr in table.items():
            if sym.lower() == symbol.lower():
                return addr
        return None

    def token_symbol(self, chain_id: int, address: bytes) -> str | None:
        for sym, addr in self.tokens.get(chain_id, {}).items():
            if addr == address:
                return sym
        return None

    def known_addresses(self) -> set[bytes]:
        out = set()
        for p in self.protocols.values():
            out.update(p.roles.values())
            for t in p.tables.values():
                out.update(t.values())
        for b in self.networks.values():
            out.add(b.inbox)
        return out


def _binding(raw: Any, where: str) -> Binding:
    if not isinstance(raw, dict):
        raise RegistryError(f"{where}: binding must be an object")
    if "arg" in raw and "table" in raw:
        return Binding("table", index=int(raw["arg"]), table=raw["table"], field=raw.get("field"))
    if "arg" in raw:
        return Binding("arg", index=int(raw["arg"]), field=raw.get("field"))
    if "role" in raw:
        return Binding("role", role=raw["role"])
    if "const" in raw:
        kind = raw.get("kind", "address")
        return Binding("const", value=make_value(kind, str(raw["const"])))
    raise RegistryError(f"{where}: unknown binding {raw!r}")


def _load_action(family: str, name: str, raw: dict) -> Action:
    where = f"actions.{family}.{name}"
    category = raw.get("category", "updateAct")
    if category not in ACTION_CATEGORIES:
        raise RegistryError(f"{where}: bad category {category!r}")
    params = tuple(
        ParamSpec(
            p["name"],
            canonical_kind(p.get("kind", "address")),
            p.get("entity", "token"),
            tuple(p.get("cues", ())),
            tuple(p.get("after", ())),
            p.get("var"),
            int(p.get("scale", 0)),
        )
        for p in raw.get("params", [])
    )
    templates = []
    for t in raw.get("calls", []):
        sig = parse_signature(t["sig"])
        bindings = tuple(_binding(b, where) for b in t.get("args", []))
        if len(bindings) != len(sig.kinds):
            raise RegistryError(f"{where}: {sig.canonical} has {len(sig.kinds)} params, {len(bindings)} bindings")
        for b in bindings:
            if b.source in ("arg", "table") and b.index >= len(params):
                raise RegistryError(f"{where}: binding refers to argument {b.index}")
        templates.append(ActionTemplate(t["target"], sig, bindings))
    if not templates:
        raise RegistryError(f"{where}: action has no calls")
    return Action(
        ActionName(name, category),
        params,
        tuple(templates),
        tuple(raw.get("keywords", ())),
        raw.get("intent", "update"),
        raw.get("protocolEntity", "protocol"),
    )


def load_registry(source: str | Path | dict) -> Registry:
    """Build a :class:`Registry` from a JSON file path or an already-parsed dict."""
    if isinstance(source, dict):
        raw = source
    else:
        try:
            raw = json.loads(Path(source).read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise RegistryError(f"cannot read registry {source}: {exc}") from exc
    try:
        return _build(raw)
    except (KeyError, TypeError, ValueError) as exc:
        raise RegistryError(f"malformed registry: {exc!r}") from exc


def _build(raw: dict) -> Registry:
    home = int(raw["homeChainId"])
    actions = {
        fam: MappingProxyType({n: _load_action(fam, n, a) for n, a in acts.items()})
        for fam, acts in raw.get("actions", {}).items()
    }
    protocols = {}
    for name, p in raw.get("protocols", {}).items():
        family = p.get("family", name)
        roles = MappingProxyType({r: _addr(a, f"protocols.{name}.{r}") for r, a in p.get("addresses", {}).items()})
        if not roles:
            raise RegistryError(f"protocols.{name}: no addresses")
        tables = MappingProxyType({
            t: MappingProxyType({_addr(k, name): _addr(v, name) for k, v in entries.items()})
            for t, entries in p.get("tables", {}).items()
        })
        proto = Protocol(name, family, int(p.get("chainId", home)), roles, tables, tuple(p.get("aliases", ())), p.get("var"))
        for act in actions.get(family, {}).values():
            for t in act.templates:
                if t.target_role != "$self" and t.target_role not in roles:
                    raise RegistryError(f"protocols.{name}: action {act.name.name} targets missing role {t.target_role!r}")
                for b in t.bindings:
                    if b.source == "role" and b.role not in roles:
                        raise RegistryError(f"protocols.{name}: binding uses missing role {b.role!r}")
                    if b.source == "table" and b.table not in tables:
                        raise RegistryError(f"protocols.{name}: binding uses missing table {b.table!r}")
        protocols[name] = proto
    networks = {}
    for cid, n in raw.get("networks", {}).items():
        sig = parse_signature(n["wrapperSig"])
        if not sig.kinds or sig.kinds[-1] != "bytes":
            raise RegistryError(f"networks.{cid}: wrapper's last parameter must be bytes")
        params = []
        for kind, p in zip(sig.kinds[:-1], n.get("params", [])):
            params.append(make_value(kind, str(p)))
        if len(params) != len(sig.kinds) - 1:
            raise RegistryError(f"networks.{cid}: wrapper needs {len(sig.kinds) - 1} default params")
        networks[int(cid)] = BridgeConfig(
            int(cid), _addr(n["inbox"], f"networks.{cid}"), sig, tuple(params), n.get("bundleFormat", "tuple-concat")
        )
    if home in networks:
        raise RegistryError("home chain must not be a bridge network")
    chains = raw.get("chains", {})
    chain_names = {int(k): c["name"] for k, c in chains.items()}
    chain_vars = {int(k): c.get("var", c["name"]) for k, c in chains.items()}
    tokens = {
        int(cid): MappingProxyType({sym: _addr(a, f"tokens.{cid}.{sym}") for sym, a in table.items()})
        for cid, table in raw.get("tokens", {}).items()
    }
    return Registry(
        home,
        MappingProxyType(protocols),
        MappingProxyType(actions),
        MappingProxyType(networks),
        MappingProxyType(chain_names),
        MappingProxyType(chain_vars),
        MappingProxyType(tokens),
    )
