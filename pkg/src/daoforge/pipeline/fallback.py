"""ABI-matching interpreter for actions the language cannot express.

The target contract's ABI is fetched, its state-changing functions are
scored by token overlap (Jaccard) between the split function name and the
request words, and the best one above the threshold is called with
arguments bound from the utterance's entities.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Protocol

import requests

from ..abi.codec import FunctionSig, encode_args
from ..ast import Assignment, Constant, ProtocolLit, Value, canonical_kind, int_bounds, is_integer_kind
from ..errors import AbiFetchError, BindingFailure, DaoForgeError, EvalError, InterpreterError, NoMatchingFunction
from ..evaluator import wrap_cross_chain
from ..parser import parse
from ..payload import Call, ProposalPayload
from ..registry import Registry

DEFAULT_THRESHOLD = 0.6
ETHERSCAN_URL = "https://api.etherscan.io/v2/api"


@dataclass(frozen=True)
class AbiFunction:
    name: str
    kinds: tuple[str, ...]
    param_names: tuple[str, ...] = ()

    @property
    def sig(self) -> FunctionSig:
        return FunctionSig(self.name, self.kinds)


def parse_abi(doc) -> list[AbiFunction]:
    """State-changing functions of an ABI document whose parameter types we can encode."""
    if not isinstance(doc, list):
        raise AbiFetchError("ABI document must be a list")
    out = []
    for item in doc:
        if not isinstance(item, dict) or item.get("type", "function") != "function":
            continue
        if item.get("stateMutability") in ("view", "pure") or item.get("constant"):
            continue
        try:
            kinds = tuple(canonical_kind(i["type"]) for i in item.get("inputs", []))
        except (DaoForgeError, KeyError, ValueError):
            continue  # arrays and tuples are outside the codec
        names = tuple(i.get("name", "") for i in item.get("inputs", []))
        out.append(AbiFunction(item["name"], kinds, names))
    return out


class AbiSource(Protocol):
    def fetch_abi(self, address: bytes, chain_id: int) -> list[AbiFunction]: ...


class FixtureAbiSource:
    """Reads ``<dir>/<0xaddress>.json`` (lowercase address)."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def fetch_abi(self, address: bytes, chain_id: int) -> list[AbiFunction]:
        path = self.directory / f"0x{bytes(address).hex()}.json"
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise AbiFetchError(f"no ABI for 0x{bytes(address).hex()}: {exc}") from exc
        return parse_abi(doc)


class EtherscanAbiSource:
    """Block-explorer ``getabi`` endpoint."""

    def __init__(self, api_key: str, base_url: str = ETHERSCAN_URL, timeout: float = 20.0):
        if not api_key:
            raise AbiFetchError("an explorer API key is required")
        self.api_key, self.base_url, self.timeout = api_key, base_url, timeout

    def fetch_abi(self, address: bytes, chain_id: int) -> list[AbiFunction]:
        params = {"chainid": chain_id, "module": "contract", "action": "getabi",
                  "address": "0x" + bytes(address).hex(), "apikey": self.api_key}
        try:
            resp = requests.get(self.base_url, params=params, timeout=self.timeout)
            resp.raise_for_status()
            body = resp.json()
        except (requests.RequestException, ValueError) as exc:
            raise AbiFetchError(f"ABI request failed: {exc}") from exc
        if str(body.get("status")) != "1":
            raise AbiFetchError(f"explorer refused ABI request: {body.get('result') or body.get('message')}")
        try:
            return parse_abi(json.loads(body["result"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise AbiFetchError(f"explorer returned an unreadable ABI: {exc}") from exc


_CAMEL = re.compile(r"[A-Z]+(?![a-z])|[A-Z]?[a-z]+|\d+")


def _canon_verb(word: str, lexicon) -> str:
    if lexicon is None:
        return word
    hit = lexicon.lookup((word,))
    if hit is not None and hit[0] == "verb":
        word = hit[1]
    return lexicon.verb_base(word)[0]


def name_tokens(name: str, lexicon=None) -> set[str]:
    return {_canon_verb(w.lower(), lexicon) for w in _CAMEL.findall(name)}


def query_tokens(labeled, lexicon=None) -> set[str]:
    skip = {e.value.lower() for e in labeled.entities}
    stop = lexicon.stopwords if lexicon is not None else frozenset()
    out = set()
    if labeled.intent:
        out.add(_canon_verb(labeled.intent, lexicon))
    for w in re.findall(r"[A-Za-z][A-Za-z0-9_]*", labeled.normalized):
        w = w.lower()
        if w in stop or w in skip or w == (labeled.intent or "").lower():
            continue
        out.add(w)
    return out


def jaccard(a: set, b: set) -> float:
    return len(a & b) / len(a | b) if a | b else 0.0


def _chain(labeled, registry: Registry, lexicon) -> int:
    if labeled.network:
        cid = registry.chain_id_for(labeled.network)
        if cid is None and lexicon is not None:
            cid = lexicon.chain_ids.get(labeled.network)
        if cid is not None:
            return cid
    return registry.home_chain_id


def _targets(labeled, program, registry: Registry, chain: int) -> list[bytes]:
    out: list[bytes] = []
    if program is not None:
        if isinstance(program, str):
            program = parse(program)
        for st in program.statements:
            if isinstance(st, Assignment) and isinstance(st.expr, ProtocolLit):
                out.extend(a.data for a in st.expr.addresses)
            elif isinstance(st, Assignment) and isinstance(st.expr, Constant) and st.expr.value.kind == "address":
                out.append(st.expr.value.data)
    for i, e in enumerate(labeled.entities):
        role = labeled.role_of(i)
        if e.kind == "contract":
            proto, addr = registry.protocol_by_role(e.value, chain)
            if addr is not None:
                out.append(addr)
        elif e.kind == "token" and role == "market":
            token = registry.token_address(chain, e.value)
            for proto in registry.protocols.values():
                if proto.chain_id != chain or token is None:
                    continue
                for table in proto.tables.values():
                    if token in table:
                        out.append(table[token])
    if not out:
        out.extend(Value.address(e.value).data for e in labeled.entities if e.kind == "address")
    seen: set[bytes] = set()
    return [a for a in out if not (a in seen or seen.add(a))]


def _bind(fn: AbiFunction, labeled, registry: Registry, chain: int, target: bytes) -> list[Value]:
    addresses = [Value.address(e.value) for e in labeled.entities if e.kind == "address"]
    addresses = [a for a in addresses if a.data != target]
    for i, e in enumerate(labeled.entities):
        if e.kind == "token" and labeled.role_of(i) != "market":
            addr = registry.token_address(chain, e.value)
            if addr is not None:
                addresses.append(Value("address", addr))
    numbers = [e.value for e in labeled.entities if e.kind == "number"]
    values = []
    for kind, pname in zip(fn.kinds, fn.param_names or [""] * len(fn.kinds)):
        if kind == "bool":
            values.append(Value("bool", labeled.polarity))
        elif kind == "address" and addresses:
            values.append(addresses.pop(0))
        elif is_integer_kind(kind) and numbers:
            text = numbers.pop(0)
            if not text.isdigit():
                raise BindingFailure(f"{fn.name}: {text!r} is not an integer for {pname or kind}")
            lo, hi = int_bounds(kind)
            if not lo <= int(text) < hi:
                raise BindingFailure(f"{fn.name}: {text} does not fit {kind}")
            values.append(Value(kind, int(text)))
        else:
            raise BindingFailure(f"{fn.name}: nothing in the request fills {pname or kind} ({kind})")
    return values


def interpret_fallback(labeled, program, abi_source: AbiSource, registry: Registry, lexicon=None,
                       threshold: float = DEFAULT_THRESHOLD) -> ProposalPayload:
    chain = _chain(labeled, registry, lexicon)
    targets = _targets(labeled, program, registry, chain)
    if not targets:
        raise NoMatchingFunction("no target contract could be identified")
    query = query_tokens(labeled, lexicon)
    best = None
    fetch_error = None
    fetched = False
    for t_index, target in enumerate(targets):
        try:
            functions = abi_source.fetch_abi(target, chain)
        except AbiFetchError as exc:
            fetch_error = exc
            continue
        fetched = True
        for f_index, fn in enumerate(functions):
            score = jaccard(query, name_tokens(fn.name, lexicon))
            rank = (score, -t_index, -f_index)
            if best is None or rank > best[0]:
                best = (rank, target, fn)
    if not fetched:
        raise fetch_error
    if best is None or best[0][0] < threshold:
        top = f"{best[2].name} scored {best[0][0]:.2f}" if best else "no candidate functions"
        raise NoMatchingFunction(f"no ABI function matches {sorted(query)} ({top}, threshold {threshold})")
    _, target, fn = best
    call = Call(target, fn.sig, encode_args(_bind(fn, labeled, registry, chain, target)))
    try:
        return ProposalPayload(tuple(wrap_cross_chain(registry, chain, [call])))
    except EvalError as exc:
        raise InterpreterError(f"cannot route the call: {exc}") from exc
