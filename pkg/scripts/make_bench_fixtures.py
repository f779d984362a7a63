"""Write the benchmark case files under tests/fixtures/bench/.

Golden payloads are built here with eth-abi and pycryptodome only, so they
do not depend on daoforge's own encoder. Each leaf call also records its full
calldata (selector + arguments) for cross-checking.
"""

import json
from pathlib import Path

from Crypto.Hash import keccak
from eth_abi import encode

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "bench"

INBOX = "0x4Dbd4fc535Ac27206064B68FfCf827b0A60BAB3f"
WRAPPER = "createRetryableTicket(address,uint256,uint256,address,address,uint256,uint256,bytes)"
CONFIGURATOR = "0x316f9708bB98af7dA9c68C1C3b5e79039cD336E3"
PROXY_ADMIN = "0x1EC63B5883C3481134FD50D5DAebc83Ecd2E8779"
REWARDS = {1: "0x1B0e765F6224C21223AeA2af16c1C46E38885a40", 42161: "0x88730d254A2f7e6AC8388c3198aFd694bA9f7fae"}

TOKENS = {
    1: {
        "USDC": "0xA0b86991c6218b36c1d19D4a2e9Eb0cE3606eB48",
        "WETH": "0xC02aaA39b223FE8D0A0e5C4F27eAD9083C756Cc2",
        "COMP": "0xc00e94Cb662C3520282E6f5717214004A7f26888",
        "WBTC": "0x2260FAC5E5542a773Aa44fBCfeDf7C193bc2C599",
        "LINK": "0x514910771AF9Ca656af840dff83E8264EcF986CA",
        "UNI": "0x1f9840a85d5aF5bf1D1762F925BDADdC4201F984",
    },
    42161: {
        "USDC": "0xaf88d065e77c8cC2239327C5EDb3A432268e5831",
        "WETH": "0x82aF49447D8a07e3bd95BD0d56f35241523fBab1",
        "USDT": "0xFd086bC7CD5C481DCC9C85ebE478A1C0b69FCbb9",
        "wstETH": "0x5979D7b546E38E414F7E9822514be443A4800529",
        "rsETH": "0xf176fb51f4eb826136a54fdc71c50fcd2202e272",
        "ARB": "0x912CE59144191C1204E64559FE8253a0e49E6548",
        "WBTC": "0x2f2a2543B76A4166549F7aaB2e75Bef0aefC5B0f",
        "GMX": "0xfc5A1A6EB076a2C7aD06eD22C90d7E710E35ad0a",
    },
}
COMETS = {
    1: {"USDC": "0xc3d688B66703497DAA19211EEdff47f25384cdc3", "WETH": "0xA17581A9E3356d9A858b789D68B4d866e593aE94"},
    42161: {
        "WETH": "0x0fbcbaea96ce0cf7ee00a8c19c3ab6f5dc8e1921",
        "USDC": "0x9c4ec768c28520B50860ea7a15bd7213a9fF58bf",
        "USDT": "0xd98Be00b5D27fc98112BdE293e487f8D4cA57d07",
    },
}
E18 = 10**18


def kinds_of(sig):
    inner = sig[sig.index("(") + 1:-1]
    return inner.split(",") if inner else []


def call(target, sig, *args):
    body = encode(kinds_of(sig), list(args))
    selector = keccak.new(digest_bits=256, data=sig.encode()).digest()[:4]
    return {
        "address": target,
        "value": "0",
        "functionSig": sig,
        "payload": "0x" + body.hex(),
        "calldata": "0x" + (selector + body).hex(),
    }


def bridge(*calls):
    return {"address": INBOX, "value": "0", "functionSig": WRAPPER, "payload": list(calls)}


def on(chain, calls):
    return [bridge(*calls)] if chain != 1 else list(calls)


def asset_update(chain, fn, asset, market, value):
    comet = COMETS[chain][market]
    return [
        call(CONFIGURATOR, f"{fn}(address,address,uint128)" if fn == "updateAssetSupplyCap"
             else f"{fn}(address,address,uint64)", TOKENS[chain][asset], comet, value),
        call(PROXY_ADMIN, "deployAndUpgradeTo(address,address)", CONFIGURATOR, comet),
    ]


def market_update(chain, fn, market, value):
    comet = COMETS[chain][market]
    return [
        call(CONFIGURATOR, f"{fn}(address,uint64)", comet, value),
        call(PROXY_ADMIN, "deployAndUpgradeTo(address,address)", CONFIGURATOR, comet),
    ]


def reward(chain, market, token):
    return [call(REWARDS[chain], "setRewardConfig(address,address)", COMETS[chain][market], TOKENS[chain][token])]


def token_call(chain, token, fn, who, amount):
    return [call(TOKENS[chain][token], f"{fn}(address,uint256)", who, amount)]


def pause(chain, market, flag):
    return [call(COMETS[chain][market], "pause(bool,bool,bool,bool,bool)", *([flag] * 5))]


ALICE = "0x9f8c163cba728e99993abe7495f06c0a3c8ac8b9"
BOB = "0x2b4c5a1d0e3f6a7b8c9d0e1f2a3b4c5d6e7f8091"
GOV = "0xb0a1c2d3e4f5061728394a5b6c7d8e9f0a1b2c3d"

CANONICAL = [
    ("unitary-01", "unitary", "Set the supply cap of WBTC in the USDC market on Ethereum to 15,000",
     asset_update(1, "updateAssetSupplyCap", "WBTC", "USDC", 15000)),
    ("unitary-02", "unitary", "Change the borrow collateral factor of LINK in the WETH market on Ethereum to 0.75",
     asset_update(1, "updateAssetBorrowCollateralFactor", "LINK", "WETH", 75 * E18 // 100)),
    ("unitary-03", "unitary", f"Transfer 50,000 COMP to {ALICE} on Ethereum",
     token_call(1, "COMP", "transfer", ALICE, 50000)),
    ("unitary-04", "unitary", "Set the supply speed of the WETH market on Ethereum to 120",
     market_update(1, "setBaseTrackingSupplySpeed", "WETH", 120)),
    ("composite-01", "composite",
     "Set the supply cap of UNI to 100000 and the liquidation factor of UNI to 0.9 in the USDC market on Ethereum",
     asset_update(1, "updateAssetSupplyCap", "UNI", "USDC", 100000)
     + asset_update(1, "updateAssetLiquidationFactor", "UNI", "USDC", 9 * E18 // 10)),
    ("composite-02", "composite",
     "Add COMP as the reward token for the USDC market on Ethereum and set the supply speed of the USDC market to 500",
     reward(1, "USDC", "COMP") + market_update(1, "setBaseTrackingSupplySpeed", "USDC", 500)),
    ("composite-03", "composite",
     f"Approve {BOB} to spend 1000 USDC and transfer 200 USDC to {ALICE} on Ethereum",
     token_call(1, "USDC", "approve", BOB, 1000) + token_call(1, "USDC", "transfer", ALICE, 200)),
    ("composite-04", "composite",
     "Set the supply kink to 0.85 and the borrow kink to 0.9 of the WETH market on Ethereum",
     market_update(1, "setSupplyKink", "WETH", 85 * E18 // 100)
     + market_update(1, "setBorrowKink", "WETH", 9 * E18 // 10)),
    ("cross-unitary-01", "cross-chain unitary",
     "Update the supply cap of rsETH in the WETH market on Arbitrum to 5000",
     on(42161, asset_update(42161, "updateAssetSupplyCap", "rsETH", "WETH", 5000))),
    ("cross-unitary-02", "cross-chain unitary",
     "Set the borrow collateral factor of ARB in the USDC market on Arbitrum to 0.6",
     on(42161, asset_update(42161, "updateAssetBorrowCollateralFactor", "ARB", "USDC", 6 * E18 // 10))),
    ("cross-unitary-03", "cross-chain unitary", f"Transfer 10,000 ARB to {BOB} on Arbitrum",
     on(42161, token_call(42161, "ARB", "transfer", BOB, 10000))),
    ("cross-unitary-04", "cross-chain unitary", "Set the borrow speed of the USDC market on Arbitrum to 3000",
     on(42161, market_update(42161, "setBaseTrackingBorrowSpeed", "USDC", 3000))),
    # golden spreads the two updates over two bridge messages
    ("cross-composite-01", "cross-chain composite",
     "Set the supply cap of wstETH to 1000 and the supply cap of rsETH to 2000 in the WETH market on Arbitrum",
     on(42161, asset_update(42161, "updateAssetSupplyCap", "wstETH", "WETH", 1000))
     + on(42161, asset_update(42161, "updateAssetSupplyCap", "rsETH", "WETH", 2000))),
    ("cross-composite-02", "cross-chain composite",
     "Set the supply cap of WBTC in the USDC market on Ethereum to 500 and the supply cap of WBTC in the USDT "
     "market on Arbitrum to 200",
     asset_update(1, "updateAssetSupplyCap", "WBTC", "USDC", 500)
     + on(42161, asset_update(42161, "updateAssetSupplyCap", "WBTC", "USDT", 200))),
    ("cross-composite-03", "cross-chain composite",
     "Add ARB as the reward token for the USDT market on Arbitrum and set the supply speed of the USDT market "
     "on Arbitrum to 40",
     on(42161, reward(42161, "USDT", "ARB") + market_update(42161, "setBaseTrackingSupplySpeed", "USDT", 40))),
    ("cross-composite-04", "cross-chain composite",
     "Set the liquidate collateral factor of GMX to 0.7 and the liquidation factor of GMX to 0.8 in the USDC "
     "market on Arbitrum",
     on(42161, asset_update(42161, "updateAssetLiquidateCollateralFactor", "GMX", "USDC", 7 * E18 // 10)
        + asset_update(42161, "updateAssetLiquidationFactor", "GMX", "USDC", 8 * E18 // 10))),
    ("inexpressible-01", "inexpressible", "Pause the CompoundV3 USDC market on Ethereum",
     pause(1, "USDC", True)),
    ("inexpressible-02", "inexpressible", "Unpause the CompoundV3 WETH market on Ethereum",
     pause(1, "WETH", False)),
    ("inexpressible-03", "inexpressible", "Pause the CompoundV3 WETH market on Arbitrum",
     on(42161, pause(42161, "WETH", True))),
    ("inexpressible-04", "inexpressible", f"Transfer the governor of the configurator on Ethereum to {GOV}",
     [call(CONFIGURATOR, "transferGovernor(address)", GOV)]),
]

ADVERSARIAL = [
    ("adv-ambiguous-cap", "cross-chain unitary", "Update the cap of wstETH in the WETH market on Arbitrum to 5000",
     on(42161, asset_update(42161, "updateAssetSupplyCap", "wstETH", "WETH", 5000))),
    ("adv-gibberish", "unitary", "Blorp the zindle quorbs with maximum fnord", []),
    ("adv-unknown-network", "cross-chain unitary",
     "Set the supply cap of WETH in the USDC market on Optimism to 100", []),
    ("adv-unknown-token", "unitary", "Set the supply cap of FOO in the USDC market on Ethereum to 100", []),
    ("adv-vague-rewards", "unitary", "Increase rewards for the USDC market on Ethereum",
     market_update(1, "setBaseTrackingSupplySpeed", "USDC", 1000)),
]

PERTURBED = [
    ("perturbed-cap", "cross-chain unitary", "Update the supply cap of rsETH in the WETH market on Arbitrum to 5000",
     on(42161, asset_update(42161, "updateAssetSupplyCap", "rsETH", "WETH", 4000)), "SA"),
]


def write(subdir, cases, expect=None):
    d = OUT / subdir
    d.mkdir(parents=True, exist_ok=True)
    for old in d.glob("*.json"):
        old.unlink()
    for case in cases:
        cid, cat, utt, golden = case[:4]
        obj = {"id": cid, "category": cat, "utterance": utt, "golden": golden}
        if len(case) > 4 or expect:
            obj["expect"] = case[4] if len(case) > 4 else expect
        (d / f"{cid}.json").write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
    print(f"{subdir}: {len(cases)} cases")


if __name__ == "__main__":
    write("canonical", CANONICAL)
    write("adversarial", ADVERSARIAL, expect="EI")
    write("perturbed", PERTURBED)
