"""Regenerate the bundled few-shot sample database (data/samples.jsonl).

Each sample pairs an utterance with a hand-written DAOLang program. The
script checks every program against the bundled registry before writing.
"""

import json
from pathlib import Path

from daoforge import compile_source, data_path
from daoforge.registry import load_registry

CFG = "0x316f9708bB98af7dA9c68C1C3b5e79039cD336E3"
ETH = {
    "USDC": "0xA0b86991c6218b36c1d19D4a2e9Eb0cE3606eB48",
    "WETH": "0xC02aaA39b223FE8D0A0e5C4F27eAD9083C756Cc2",
    "COMP": "0xc00e94Cb662C3520282E6f5717214004A7f26888",
    "wstETH": "0x7f39C581F595B53c5cb19bD0b3f8dA6c935E2Ca0",
    "WBTC": "0x2260FAC5E5542a773Aa44fBCfeDf7C193bc2C599",
    "LINK": "0x514910771AF9Ca656af840dff83E8264EcF986CA",
    "UNI": "0x1f9840a85d5aF5bf1D1762F925BDADdC4201F984",
}
ARB = {
    "USDC": "0xaf88d065e77c8cC2239327C5EDb3A432268e5831",
    "WETH": "0x82aF49447D8a07e3bd95BD0d56f35241523fBab1",
    "USDT": "0xFd086bC7CD5C481DCC9C85ebE478A1C0b69FCbb9",
    "wstETH": "0x5979D7b546E38E414F7E9822514be443A4800529",
    "rsETH": "0xf176fb51f4eb826136a54fdc71c50fcd2202e272",
    "ARB": "0x912CE59144191C1204E64559FE8253a0e49E6548",
    "WBTC": "0x2f2a2543B76A4166549F7aaB2e75Bef0aefC5B0f",
    "GMX": "0xfc5A1A6EB076a2C7aD06eD22C90d7E710E35ad0a",
}
NET = {"ethereum": ("eth", 1), "arbitrum": ("arb", 42161)}
TOKENS = {"ethereum": ETH, "arbitrum": ARB}


def asset_update(net, action, asset, market, value, comment):
    v, cid = NET[net]
    t = TOKENS[net]
    return (
        f"collateral <- {t[asset]}\n"
        f"market <- {t[market]}\n"
        f"{v} <- network{{{cid}}}\n"
        f"compV3 <- protocol{{{CFG}}}\n"
        f"# {comment}\n"
        f"{v}(compV3:{action}(collateral, market, {value}))\n"
    )


def market_update(net, action, market, value, comment):
    v, cid = NET[net]
    return (
        f"market <- {TOKENS[net][market]}\n"
        f"{v} <- network{{{cid}}}\n"
        f"compV3 <- protocol{{{CFG}}}\n"
        f"# {comment}\n"
        f"{v}(compV3:{action}(market, {value}))\n"
    )


def token_op(net, action, token, who, amount, var):
    v, cid = NET[net]
    return (
        f"{var} <- {who}\n"
        f"{v} <- network{{{cid}}}\n"
        f"{token} <- protocol{{{TOKENS[net][token]}}}\n"
        f"{v}({token}:{action}({var}, {amount}))\n"
    )


SAMPLES = [
    ("s01", "Update the supply cap of wstETH in the WETH market on Arbitrum to 5000",
     asset_update("arbitrum", "update_supplyCap", "wstETH", "WETH", 5000, "raise the wstETH cap"),
     {"intent": "update", "params": ["supplyCap"]}),
    ("s02", "Set the supply cap of WBTC in the USDC market on Ethereum to 12,000",
     asset_update("ethereum", "update_supplyCap", "WBTC", "USDC", 12000, "WBTC cap"),
     {"intent": "update", "params": ["supplyCap"]}),
    ("s03", "Lower the supply cap of LINK for the WETH market on mainnet to 250000",
     asset_update("ethereum", "update_supplyCap", "LINK", "WETH", 250000, "LINK cap"),
     {"intent": "update", "params": ["supplyCap"]}),
    ("s04", "Increase the supply cap of ARB in the USDC market on Arbitrum to 4000000",
     asset_update("arbitrum", "update_supplyCap", "ARB", "USDC", 4000000, "ARB cap"),
     {"intent": "update", "params": ["supplyCap"]}),
    ("s05", "Change the borrow collateral factor of WBTC in the USDC market on Ethereum to 0.7",
     asset_update("ethereum", "update_borrowCollateralFactor", "WBTC", "USDC", 700000000000000000, "70%"),
     {"intent": "update", "params": ["borrowCollateralFactor"]}),
    ("s06", "Set the borrow collateral factor of GMX in the USDT market on Arbitrum to 60%",
     asset_update("arbitrum", "update_borrowCollateralFactor", "GMX", "USDT", 600000000000000000, "60%"),
     {"intent": "update", "params": ["borrowCollateralFactor"]}),
    ("s07", "Adjust the liquidate collateral factor of UNI in the USDC market on Ethereum to 0.78",
     asset_update("ethereum", "update_liquidateCollateralFactor", "UNI", "USDC", 780000000000000000, "78%"),
     {"intent": "update", "params": ["liquidateCollateralFactor"]}),
    ("s08", "Set the liquidate collateral factor of wstETH in the WETH market on Arbitrum to 0.93",
     asset_update("arbitrum", "update_liquidateCollateralFactor", "wstETH", "WETH", 930000000000000000, "93%"),
     {"intent": "update", "params": ["liquidateCollateralFactor"]}),
    ("s09", "Change the liquidation factor of COMP in the USDC market on Ethereum to 0.8",
     asset_update("ethereum", "update_liquidationFactor", "COMP", "USDC", 800000000000000000, "80%"),
     {"intent": "update", "params": ["liquidationFactor"]}),
    ("s10", "Modify the liquidation factor of WBTC in the USDC market on Arbitrum to 0.95",
     asset_update("arbitrum", "update_liquidationFactor", "WBTC", "USDC", 950000000000000000, "95%"),
     {"intent": "update", "params": ["liquidationFactor"]}),
    ("s11", "Set the supply speed of the USDC market on Ethereum to 1000000",
     market_update("ethereum", "update_supplySpeed", "USDC", 1000000, "base tracking supply speed"),
     {"intent": "update", "params": ["baseTrackingSupplySpeed"]}),
    ("s12", "Reduce the supply speed of the WETH market on Arbitrum to 250",
     market_update("arbitrum", "update_supplySpeed", "WETH", 250, "base tracking supply speed"),
     {"intent": "update", "params": ["baseTrackingSupplySpeed"]}),
    ("s13", "Set the borrow speed of the USDT market on Arbitrum to 5000",
     market_update("arbitrum", "update_borrowSpeed", "USDT", 5000, "base tracking borrow speed"),
     {"intent": "update", "params": ["baseTrackingBorrowSpeed"]}),
    ("s14", "Change the borrow speed of the WETH market on Ethereum to 0",
     market_update("ethereum", "update_borrowSpeed", "WETH", 0, "stop borrow rewards"),
     {"intent": "update", "params": ["baseTrackingBorrowSpeed"]}),
    ("s15", "Set the supply kink of the USDC market on Ethereum to 0.9",
     market_update("ethereum", "update_supplyKink", "USDC", 900000000000000000, "90% utilization"),
     {"intent": "update", "params": ["supplyKink"]}),
    ("s16", "Update the borrow kink of the USDC market on Arbitrum to 0.85",
     market_update("arbitrum", "update_borrowKink", "USDC", 850000000000000000, "85% utilization"),
     {"intent": "update", "params": ["borrowKink"]}),
    ("s17", "Add ARB as the reward token for the USDC market on Arbitrum",
     market_update("arbitrum", "add_reward", "USDC", "reward", "reward token")
     .replace("market <-", f"reward <- {ARB['ARB']}\nmarket <-", 1),
     {"intent": "add", "params": ["rewardToken"]}),
    ("s18", "Register COMP as the reward token of the WETH market on Ethereum",
     market_update("ethereum", "add_reward", "WETH", "reward", "reward token")
     .replace("market <-", f"reward <- {ETH['COMP']}\nmarket <-", 1),
     {"intent": "add", "params": ["rewardToken"]}),
    ("s19", "Transfer 1,000,000 USDC to 0x5e2b0b9a1f0a3b8c8e1a3b9f6a2f3f1b2c7d7a10 on Ethereum",
     token_op("ethereum", "transfer", "USDC", "0x5e2b0b9a1f0a3b8c8e1a3b9f6a2f3f1b2c7d7a10", 1000000, "recipient"),
     {"intent": "transfer", "params": ["balance"]}),
    ("s20", "Send 250000 ARB to 0x3a1f2b9c4d5e6f708192a3b4c5d6e7f8091a2b3c on Arbitrum",
     token_op("arbitrum", "transfer", "ARB", "0x3a1f2b9c4d5e6f708192a3b4c5d6e7f8091a2b3c", 250000, "recipient"),
     {"intent": "transfer", "params": ["balance"]}),
    ("s21", "Approve 0x6b175474e89094c44da98b954eedeac495271d0f to spend 500 COMP on Ethereum",
     token_op("ethereum", "approve", "COMP", "0x6b175474e89094c44da98b954eedeac495271d0f", 500, "spender"),
     {"intent": "approve", "params": ["allowance"]}),
    ("s22", "Approve 0x1111111254eeb25477b68fb85ed929f73a960582 to spend 20000 USDC on Arbitrum",
     token_op("arbitrum", "approve", "USDC", "0x1111111254eeb25477b68fb85ed929f73a960582", 20000, "spender"),
     {"intent": "approve", "params": ["allowance"]}),
    ("s23", "Set the supply cap of wstETH to 8000 and the borrow collateral factor of wstETH to 0.8 "
            "in the WETH market on Ethereum",
     f"collateral <- {ETH['wstETH']}\nmarket <- {ETH['WETH']}\neth <- network{{1}}\n"
     f"compV3 <- protocol{{{CFG}}}\n"
     "eth(compV3:update_supplyCap(collateral, market, 8000),\n"
     "    compV3:update_borrowCollateralFactor(collateral, market, 800000000000000000))\n",
     {"intent": "update", "params": ["supplyCap", "borrowCollateralFactor"]}),
    ("s24", "Update the supply speed to 100 and the borrow speed to 50 of the USDT market on Arbitrum",
     f"market <- {ARB['USDT']}\narb <- network{{42161}}\ncompV3 <- protocol{{{CFG}}}\n"
     "arb(compV3:update_supplySpeed(market, 100), compV3:update_borrowSpeed(market, 50))\n",
     {"intent": "update", "params": ["baseTrackingSupplySpeed", "baseTrackingBorrowSpeed"]}),
    ("s25", "Set the supply cap of WBTC in the USDC market on Ethereum to 900 and the supply cap of "
            "WBTC in the USDC market on Arbitrum to 300",
     f"collateral <- {ETH['WBTC']}\nmarket <- {ETH['USDC']}\neth <- network{{1}}\n"
     f"compV3 <- protocol{{{CFG}}}\n"
     "eth(compV3:update_supplyCap(collateral, market, 900))\n"
     f"collateral <- {ARB['WBTC']}\nmarket <- {ARB['USDC']}\narb <- network{{42161}}\n"
     "arb(compV3:update_supplyCap(collateral, market, 300))\n",
     {"intent": "update", "params": ["supplyCap"]}),
    ("s26", "Transfer 100 WETH to 0xd8da6bf26964af9d7eed9e03e53415d37aa96045 on Ethereum",
     token_op("ethereum", "transfer", "WETH", "0xd8da6bf26964af9d7eed9e03e53415d37aa96045",
              100, "recipient"),
     {"intent": "transfer", "params": ["balance"]}),
]


def main():
    registry = load_registry(data_path("registry.json"))
    out = Path(data_path("samples.jsonl"))
    lines = []
    for sid, utterance, program, notes in SAMPLES:
        compile_source(program, registry)  # raises if the program is invalid
        lines.append(json.dumps({"id": sid, "utterance": utterance, "program": program, "annotations": notes}))
    out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} samples to {out}")


if __name__ == "__main__":
    main()
