import json
import subprocess
import sys
from pathlib import Path

import pytest

from daoforge.cli import main
from daoforge.payload import ProposalPayload

FIX = Path(__file__).parent / "fixtures"
RSETH = "Update the supply cap of rsETH in the WETH market on Arbitrum to 5000"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compile_example_program(capsys):
    code, out, _ = run(capsys, "compile", str(FIX / "wsteth_cap.dao"))
    assert code == 0
    (wrapper,) = json.loads(out)
    assert wrapper["address"] == "0x4dbd4fc535ac27206064b68ffcf827b0a60bab3f"
    ours = ProposalPayload.from_obj([wrapper]).calls[0].payload
    gold = ProposalPayload.from_json((FIX / "rseth_cap_payload.json").read_text()).calls[0].payload
    assert [c.sig for c in ours] == [c.sig for c in gold]
    assert ours[1].payload == gold[1].payload
    # the example program names wstETH as collateral; only the asset word differs from the rsETH payload
    assert ours[0].payload[32:] == gold[0].payload[32:]


def test_compile_is_byte_identical(capsys):
    first = run(capsys, "compile", str(FIX / "wsteth_cap.dao"))[1]
    assert run(capsys, "compile", str(FIX / "wsteth_cap.dao"))[1] == first


def test_compile_empty_file(tmp_path, capsys):
    f = tmp_path / "empty.dao"
    f.write_text("")
    code, out, _ = run(capsys, "compile", str(f))
    assert code == 0 and json.loads(out) == []


def test_compile_out_file(tmp_path, capsys):
    dest = tmp_path / "p.json"
    code, out, _ = run(capsys, "compile", str(FIX / "wsteth_cap.dao"), "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())[0]["functionSig"].startswith("createRetryableTicket(")


def test_compile_errors(tmp_path, capsys):
    bad = tmp_path / "bad.dao"
    bad.write_text("x <- (")
    code, out, err = run(capsys, "compile", str(bad))
    assert code == 1 and out == "" and "1:" in err
    assert run(capsys, "compile", str(FIX / "wsteth_cap.dao"), "--registry", str(tmp_path / "none.json"))[0] == 2
    assert run(capsys, "compile", str(tmp_path / "missing.dao"))[0] == 2


def test_compile_eval_error(tmp_path, capsys):
    f = tmp_path / "x.dao"
    f.write_text("op <- network{10}\nop(compV3:update_supplyCap(1, 2, 3))")
    assert run(capsys, "compile", str(f))[0] == 1


def test_retrieve(capsys):
    code, out, _ = run(capsys, "retrieve", "-u", RSETH, "--k", "4")
    rows = [json.loads(line) for line in out.splitlines()]
    assert code == 0 and len(rows) == 4
    assert rows[0]["id"] == "s01"
    assert all(set(r) == {"id", "matched", "distance"} for r in rows)


def test_retrieve_k0_and_no_overlap(capsys):
    assert run(capsys, "retrieve", "-u", RSETH, "--k", "0")[:2] == (0, "")
    assert run(capsys, "retrieve", "-u", "hello there")[:2] == (0, "")


def test_synthesize_offline(capsys):
    code, out, _ = run(capsys, "synthesize", "-u", RSETH, "--offline")
    assert code == 0
    obj = json.loads(out)
    assert "arb(compV3:update_supplyCap(collateral,market,5000))" in obj["program"]
    golden = ProposalPayload.from_json((FIX / "rseth_cap_payload.json").read_text())
    assert ProposalPayload.from_obj(obj["payload"]) == golden


def test_synthesize_failures(capsys):
    code, out, err = run(capsys, "synthesize", "-u", "Blorp the zindle quorbs")
    assert code == 3 and out == "" and "program contains no transaction" in err
    code, _, err = run(capsys, "synthesize", "-u", "Update the cap of wstETH in the WETH market on Arbitrum to 5000")
    assert code == 4 and "fallback" in err


def test_synthesize_no_synthesizer(capsys):
    code, out, _ = run(capsys, "synthesize", "-u", "Pause the CompoundV3 USDC market on Ethereum", "--no-synthesizer")
    assert code == 0 and json.loads(out)["stage"] == "fallback"


def test_live_mode_without_key(capsys, monkeypatch):
    monkeypatch.delenv("GENERATOR_API_KEY", raising=False)
    monkeypatch.delenv("ETHERSCAN_API_KEY", raising=False)
    code, out, err = run(capsys, "synthesize", "-u", RSETH, "--live")
    assert code == 2 and "GENERATOR_API_KEY" in err and out == ""


def test_bad_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text('{"k": -3}')
    assert run(capsys, "retrieve", "-u", RSETH, "--config", str(cfg))[0] == 2


def test_validate_program(tmp_path, capsys):
    code, out, _ = run(capsys, "validate", str(FIX / "wsteth_cap.dao"))
    assert code == 0 and json.loads(out) == {"ok": True, "diagnostics": []}
    bad = tmp_path / "bad.dao"
    bad.write_text("x <- y")
    code, out, err = run(capsys, "validate", str(bad))
    assert code == 1 and not json.loads(out)["ok"] and "y" in err


def test_validate_classify(tmp_path, capsys):
    gold = FIX / "rseth_cap_payload.json"
    code, out, _ = run(capsys, "validate", "--payload", str(gold), "--golden", str(gold))
    assert code == 0 and json.loads(out)["level"] == "EM"
    perturbed = json.loads((FIX / "bench" / "perturbed" / "perturbed-cap.json").read_text())["golden"]
    p = tmp_path / "p.json"
    p.write_text(json.dumps(perturbed))
    assert json.loads(run(capsys, "validate", "--payload", str(p), "--golden", str(gold))[1]) == \
        {"level": "SA", "passed": False}
    assert run(capsys, "validate", "--payload", str(p))[0] == 2


def test_bench(tmp_path, capsys):
    table = tmp_path / "t.txt"
    code, out, err = run(capsys, "bench", "--cases", str(FIX / "bench" / "canonical"), "--k", "4",
                         "--table", str(table))
    assert code == 0
    report = json.loads(out)
    assert report["passRate"] == 1.0 and report["total"] == 20 and report["k"] == 4
    assert "Functional Equivalence" in err and table.read_text() == err


def test_bench_empty_and_malformed(tmp_path, capsys):
    code, out, _ = run(capsys, "bench", "--cases", str(tmp_path))
    assert code == 0 and json.loads(out)["total"] == 0
    (tmp_path / "x.json").write_text("{")
    assert run(capsys, "bench", "--cases", str(tmp_path))[0] == 2


def test_bench_ablated_synthesizer(capsys):
    code, out, _ = run(capsys, "bench", "--cases", str(FIX / "bench" / "canonical"), "--no-synthesizer")
    report = json.loads(out)
    assert code == 0 and report["flags"]["PS"] is False
    assert report["categories"]["inexpressible"]["passRate"] == 1.0


def test_entry_point_module():
    proc = subprocess.run([sys.executable, "-m", "daoforge", "compile", str(FIX / "wsteth_cap.dao")],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["value"] == "0"


@pytest.mark.parametrize("argv", [[], ["frobnicate"]])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
