import json

import pytest

from daoforge.abi import decode_args, parse_signature
from daoforge.ast import Value
from daoforge.errors import (
    ArityMismatch,
    EmptyBridgePayload,
    TypeMismatch,
    UnboundIdentifier,
    UnknownAction,
    UnknownNetwork,
    UnknownProtocol,
)
from daoforge.evaluator import eval_program, resolve_action, wrap_cross_chain
from daoforge.parser import parse
from daoforge.payload import Call, ProposalPayload, decode_bundle, encode_bundle

INBOX = bytes.fromhex("4dbd4fc535ac27206064b68ffcf827b0a60bab3f")
CONFIGURATOR = bytes.fromhex("316f9708bb98af7da9c68c1c3b5e79039cd336e3")
PROXY_ADMIN = bytes.fromhex("1ec63b5883c3481134fd50d5daebc83ecd2e8779")
WRAPPER_SIG = "createRetryableTicket(address,uint256,uint256,address,address,uint256,uint256,bytes)"


def run(src, registry):
    return eval_program(parse(src), registry)


def test_wsteth_program_structure(registry, wsteth_source):
    out = run(wsteth_source, registry)
    assert len(out) == 1
    top = out.calls[0]
    assert top.address == INBOX
    assert top.sig.canonical == WRAPPER_SIG
    assert top.nested
    assert [c.address for c in top.payload] == [CONFIGURATOR, PROXY_ADMIN]
    assert [c.sig.canonical for c in top.payload] == [
        "updateAssetSupplyCap(address,address,uint128)",
        "deployAndUpgradeTo(address,address)",
    ]


def test_rseth_program_bytes(registry, rseth_source, fixtures_dir):
    golden = ProposalPayload.from_json((fixtures_dir / "rseth_cap_payload.json").read_text())
    out = run(rseth_source, registry)
    assert out == golden
    assert out.to_obj()[0]["payload"][0]["payload"].endswith("1388")


def test_json_roundtrip(registry, rseth_source):
    out = run(rseth_source, registry)
    assert ProposalPayload.from_json(out.to_json()) == out
    assert json.loads(out.to_json())[0]["value"] == "0"


def test_wrapper_calldata(registry, rseth_source):
    top = run(rseth_source, registry).calls[0]
    data = top.calldata()
    assert data[:4].hex() == "679b6ded"
    decoded = decode_args(top.sig.kinds, data[4:])
    assert decode_bundle(decoded[-1].data) == list(top.payload)


def test_bundle_roundtrip(registry, rseth_source):
    inner = list(run(rseth_source, registry).calls[0].payload)
    assert decode_bundle(encode_bundle(inner)) == inner
    assert decode_bundle(b"") == []


def test_empty_program(registry):
    assert len(run("", registry)) == 0
    assert run("# nothing\n", registry).to_obj() == []


def test_home_chain_passthrough(registry):
    src = 'eth <- network{1}\nbob <- 0x00000000000000000000000000000000000000b0\neth(USDC:transfer(bob,100))'
    out = run(src, registry)
    assert len(out) == 1
    call = out.calls[0]
    assert call.address == bytes.fromhex("a0b86991c6218b36c1d19d4a2e9eb0ce3606eb48")
    assert call.sig.canonical == "transfer(address,uint256)"
    assert call.calldata()[:4].hex() == "a9059cbb"
    assert call.args() == [Value.address("0x00000000000000000000000000000000000000b0"), Value("uint256", 100)]


def test_resolve_transfer_by_name(registry):
    calls = resolve_action(
        registry, "erc20-ethereum", "transfer", [Value.address("0x" + "11" * 20), Value.uint(100)]
    )
    assert len(calls) == 1
    assert calls[0].sig.canonical == "transfer(address,uint256)"


def test_resolve_supply_cap(registry):
    proto = registry.protocols["compv3-arbitrum"]
    args = [Value.address("0x7f39c581f595b53c5cb19bd0b3f8da6c935e2ca0"),
            Value.address("0x82aF49447D8a07e3bd95BD0d56f35241523fBab1"), Value.uint(5000)]
    calls = resolve_action(registry, proto, "update_supplyCap", args)
    assert [c.address for c in calls] == [CONFIGURATOR, PROXY_ADMIN]


def test_network_group_shares_one_wrapper(registry, wsteth_source):
    src = wsteth_source.replace(
        "arb(compV3:update_supplyCap(collateral,market,5000));",
        "arb(compV3:update_supplyCap(collateral,market,5000), compV3:update_supplyCap(market,market,10))",
    )
    out = run(src, registry)
    assert len(out) == 1
    assert len(out.calls[0].payload) == 4


def test_separate_statements_on_same_chain_group(registry, wsteth_source):
    src = wsteth_source + "\narb(compV3:update_supplyCap(market,market,10))\n"
    assert len(run(src, registry)) == 1
    # an assignment between them closes the first message
    src2 = wsteth_source + "\ny <- 1\narb(compV3:update_supplyCap(market,market,10))\n"
    assert len(run(src2, registry)) == 2


def test_reassignment_last_write_wins(registry, rseth_source):
    src = "market <- 0x0000000000000000000000000000000000000001\n" + rseth_source
    assert run(src, registry) == run(rseth_source, registry)


def test_deterministic(registry, wsteth_source):
    a = run(wsteth_source, registry).to_json()
    b = run(wsteth_source, registry).to_json()
    assert a == b


def test_targets_are_registered(registry, wsteth_source):
    known = registry.known_addresses()
    out = run(wsteth_source, registry)
    for c in out.calls:
        assert c.address in known
    for c in out.flatten():
        assert c.address in known
        assert c.args()  # decodes cleanly


@pytest.mark.parametrize(
    "tail,err",
    [
        ("arb(compV3:frobnicate(collateral))", UnknownAction),
        ("arb(compV3:update_supplyCap(collateral,market))", ArityMismatch),
        ("arb(nothere:update_supplyCap(collateral,market,5000))", UnknownProtocol),
        ("arb(compV3:update_supplyCap(collateral,ghost,5000))", UnboundIdentifier),
        ("arb(compV3:update_supplyCap(collateral,market,\"x\"))", TypeMismatch),
        ("arb(compV3:update_supplyCap(collateral,collateral,5000))", TypeMismatch),
        ("zk <- network{324}\nzk(compV3:update_supplyCap(collateral,market,5000))", UnknownNetwork),
        ("bad <- protocol{0x0000000000000000000000000000000000000001}\narb(bad:update_supplyCap(collateral,market,5000))",
         UnknownProtocol),
        ("arb(compV3:update_supplyCap(collateral,market,340282366920938463463374607431768211456))", TypeMismatch),
    ],
)
def test_eval_errors(registry, wsteth_source, tail, err):
    src = wsteth_source.replace("arb(compV3:update_supplyCap(collateral,market,5000));", tail)
    with pytest.raises(err):
        run(src, registry)


def test_wrap_cross_chain(registry):
    calls = [Call(CONFIGURATOR, parse_signature("f()"), b"")]
    assert wrap_cross_chain(registry, 1, calls) == calls
    wrapped = wrap_cross_chain(registry, 42161, calls)
    assert len(wrapped) == 1 and wrapped[0].address == INBOX
    with pytest.raises(EmptyBridgePayload):
        wrap_cross_chain(registry, 42161, [])
    with pytest.raises(UnknownNetwork):
        wrap_cross_chain(registry, 10, calls)
