"""Acceptance suite: one check per criterion, summarized after the test run."""

import json
import random
from itertools import product
from pathlib import Path

from Crypto.Hash import keccak as oracle_keccak
from hypothesis import HealthCheck, given, settings

from daoforge import compile_source, data_path
from daoforge.abi import decode_args, encode_args, selector
from daoforge.abi.keccak import keccak256
from daoforge.ast import Value, pretty_print
from daoforge.config import load_config
from daoforge.errors import SynthesisFailed
from daoforge.parser import parse
from daoforge.payload import ProposalPayload
from daoforge.pipeline import MatchLevel, Pipeline, classify_equivalence, load_state_model
from daoforge.pipeline.bench import load_cases, run_bench
from daoforge.retrieval import Candidate, lcr_rank

from oracles import lcr_bruteforce, swap_maximal
from strategies import programs

FIX = Path(__file__).parent / "fixtures"
BENCH = FIX / "bench"

# published rsETH payload words, copied with line breaks removed
RSETH_CAP_WORDS = (
    "000000000000000000000000f176fb51f4eb826136a54fdc71c50fcd2202e272"
    "0000000000000000000000000fbcbaea96ce0cf7ee00a8c19c3ab6f5dc8e1921"
    "0000000000000000000000000000000000000000000000000000000000001388"
)
RSETH_UPGRADE_WORDS = (
    "000000000000000000000000316f9708bb98af7da9c68c1c3b5e79039cd336e3"
    "0000000000000000000000000fbcbaea96ce0cf7ee00a8c19c3ab6f5dc8e1921"
)
INBOX = "4dbd4fc535ac27206064b68ffcf827b0a60bab3f"
WRAPPER = "createRetryableTicket(address,uint256,uint256,address,address,uint256,uint256,bytes)"


def _addr(text):
    return Value("address", bytes.fromhex(text[2:]))


def test_golden_payload_bit_exact(criterion):
    with criterion("golden payload bit-exactness (published rsETH payload words, zero tolerance)", limit=1.0):
        first = encode_args([
            _addr("0xf176fb51f4eb826136a54fdc71c50fcd2202e272"),
            _addr("0x0fbcbaea96ce0cf7ee00a8c19c3ab6f5dc8e1921"),
            Value("uint128", 5000),
        ])
        second = encode_args([
            _addr("0x316f9708bb98af7da9c68c1c3b5e79039cd336e3"),
            _addr("0x0fbcbaea96ce0cf7ee00a8c19c3ab6f5dc8e1921"),
        ])
        assert len(first) == 96 and first.hex() == RSETH_CAP_WORDS
        assert len(second) == 64 and second.hex() == RSETH_UPGRADE_WORDS


def test_end_to_end_compile_example_program(criterion, registry, wsteth_source):
    with criterion("end-to-end compile of the wstETH example program (structural equality)", limit=1.0):
        payload = compile_source(wsteth_source, registry)
        assert len(payload.calls) == 1
        (wrapper,) = payload.calls
        assert wrapper.address.hex() == INBOX
        assert wrapper.sig.canonical == WRAPPER
        assert [(c.address.hex(), c.sig.canonical) for c in wrapper.payload] == [
            ("316f9708bb98af7da9c68c1c3b5e79039cd336e3", "updateAssetSupplyCap(address,address,uint128)"),
            ("1ec63b5883c3481134fd50d5daebc83ecd2e8779", "deployAndUpgradeTo(address,address)"),
        ]


def test_selector_correctness(criterion):
    with criterion("selector correctness against an independent keccak"):
        def ref(data):
            return oracle_keccak.new(digest_bits=256, data=data).digest()

        assert ref(b"transfer(address,uint256)")[:4].hex() == "a9059cbb"
        assert ref(b"")[:4].hex() == "c5d24601"
        assert selector("transfer(address,uint256)").hex() == "a9059cbb"
        assert keccak256(b"").hex().startswith("c5d24601")
        assert keccak256(b"") == ref(b"")
        rng = random.Random(7)
        for n in list(range(0, 300)) + [1000, 4096]:
            data = bytes(rng.getrandbits(8) for _ in range(n))
            assert keccak256(data) == ref(data)


def _random_value(rng):
    pick = rng.randrange(7)
    if pick == 0:
        return Value("address", rng.randbytes(20))
    if pick == 1:
        bits = 8 * rng.randint(1, 32)
        return Value(f"uint{bits}", rng.getrandbits(bits))
    if pick == 2:
        bits = 8 * rng.randint(1, 32)
        return Value(f"int{bits}", rng.getrandbits(bits) - (1 << (bits - 1)))
    if pick == 3:
        return Value("bool", rng.random() < 0.5)
    if pick == 4:
        n = rng.randint(1, 32)
        return Value(f"bytes{n}", rng.randbytes(n))
    if pick == 5:
        return Value("bytes", rng.randbytes(rng.randint(0, 100)))
    return Value("string", "".join(chr(rng.choice([rng.randint(32, 126), rng.randint(0x80, 0x2FFF)]))
                                   for _ in range(rng.randint(0, 40))))


def test_abi_round_trip(criterion):
    with criterion("ABI decode/encode round trip over 2000 random tuples", limit=10.0):
        rng = random.Random(20240901)
        dynamic_seen = static_seen = 0
        for _ in range(2000):
            values = [_random_value(rng) for _ in range(rng.randint(0, 6))]
            kinds = [v.kind for v in values]
            assert decode_args(kinds, encode_args(values)) == values
            dynamic_seen += any(k in ("bytes", "string") for k in kinds)
            static_seen += any(k not in ("bytes", "string") for k in kinds)
        assert dynamic_seen > 500 and static_seen > 500


def test_parser_round_trip(criterion, wsteth_source):
    seen = []

    @settings(max_examples=600, deadline=None, suppress_health_check=list(HealthCheck), database=None)
    @given(programs)
    def check(program):
        assert parse(pretty_print(program)) == program
        seen.append(1)

    with criterion("parser round trip over >= 500 generated programs plus the example program"):
        check()
        wsteth_program = parse(wsteth_source)
        assert parse(pretty_print(wsteth_program)) == wsteth_program
        assert len(seen) >= 500, f"only {len(seen)} programs generated"


def test_lcr_oracle_equivalence(criterion):
    with criterion("LCR greedy equals the brute-force oracle (|D|<=6, universe<=5)", limit=60.0):
        rng = random.Random(4242)
        count = 0
        # exhaustive: universe of 2 labels, up to 3 samples, every label assignment and tie pattern
        subsets = [frozenset(s) for s in ([], ["a"], ["b"], ["a", "b"])]
        for n in range(4):
            for labelings in product(subsets, repeat=n):
                for dists in product([0.1, 0.2], repeat=n):
                    cands = [Candidate(f"s{i}", labelings[i], dists[i]) for i in range(n)]
                    for query in subsets:
                        for k in range(n + 2):
                            got = lcr_rank(query, cands, k)
                            assert got == lcr_bruteforce(query, cands, k)
                            count += 1
        # random: up to 6 samples over up to 5 labels
        while count < 30_000:
            universe = [f"l{i}" for i in range(rng.randint(1, 5))]
            cands = [Candidate(f"s{i}", frozenset(u for u in universe if rng.random() < 0.4),
                               rng.choice([0.1, 0.25, 0.4, 0.7]))
                     for i in range(rng.randint(0, 6))]
            query = frozenset(u for u in universe if rng.random() < 0.7)
            k = rng.randint(0, 7)
            got = lcr_rank(query, cands, k)
            assert got == lcr_bruteforce(query, cands, k)
            assert swap_maximal(got, query, cands)
            count += 1
        assert count >= 10_000


def test_equivalence_classifier(criterion, registry):
    model = load_state_model(data_path("state_model.json"))
    golden = ProposalPayload.from_json((FIX / "rseth_cap_payload.json").read_text())
    with criterion("equivalence classifier EM / FE / SA / EI fixtures"):
        assert classify_equivalence(golden, golden, model) is MatchLevel.EM
        approvals = []
        for i, sym in enumerate(("USDC", "WETH", "COMP")):
            src = (f"r <- 0x{i + 1:040x}\neth <- network{{1}}\n"
                   f"t <- protocol{{0x{registry.tokens[1][sym].hex()}}}\neth(t:approve(r, {i + 5}))")
            approvals.extend(compile_source(src, registry).calls)
        a, b = ProposalPayload(tuple(approvals)), ProposalPayload(tuple(reversed(approvals)))
        assert classify_equivalence(a, b, model) is MatchLevel.FE
        perturbed = json.loads((BENCH / "perturbed" / "perturbed-cap.json").read_text())["golden"]
        assert classify_equivalence(perturbed, golden, model) is MatchLevel.SA
        broken = golden.to_obj()
        broken[0]["payload"][1]["payload"] = "0xdeadbeef"
        assert classify_equivalence(broken, golden, model) is MatchLevel.EI


def test_deterministic_pipeline_suite(criterion):
    with criterion("offline pipeline: 20 canonical cases pass, 5 adversarial rejected", limit=30.0):
        pipe = Pipeline.from_config(load_config())
        canonical = load_cases(BENCH / "canonical")
        report = run_bench(canonical, pipe)
        assert report.total == 20
        failed = [(r.id, r.level.name, r.error) for r in report.results if not r.level.passed]
        assert report.pass_rate == 1.0, failed
        adversarial = load_cases(BENCH / "adversarial")
        assert len(adversarial) == 5
        for case in adversarial:
            try:
                payload = pipe.run(case.utterance).payload
            except SynthesisFailed:
                continue
            except Exception as exc:  # fallback could not interpret it either: no payload, so EI
                assert type(exc).__name__ in ("NoMatchingFunction", "BindingFailure", "AbiFetchError",
                                              "InterpreterError"), exc
                continue
            level = classify_equivalence(payload, case.golden, pipe.state_model)
            assert level is MatchLevel.EI, (case.id, level)


def test_live_pass_rate_not_reproducible(criterion):
    # The published 89.68% at k=4 needs GPT-4o and the original 155-proposal corpus. What can be checked here
    # is that the harness emits a report with the same columns, ready for a live run.
    with criterion("live pass rate at k=4: NOT REPRODUCIBLE offline; harness report shape checked",
                   status="N/A "):
        pipe = Pipeline.from_config(load_config())
        report = run_bench(load_cases(BENCH / "perturbed"), pipe)
        header = [c for c in report.table().splitlines()[0].split("  ") if c.strip()]
        assert [c.strip() for c in header] == ["k", "RE", "PS", "SI", "Exact Match", "Functional Equivalence",
                                               "Semantic Analogy", "Error Identification", "Pass Rate (%)"]
        obj = report.to_obj()
        assert sum(obj["counts"].values()) == obj["total"]
        assert 0.0 <= obj["passRate"] <= 1.0
