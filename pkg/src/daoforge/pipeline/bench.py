"""Benchmark harness: run the pipeline over (utterance, golden, category) cases."""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from ..errors import ConfigError, DaoForgeError
from .equivalence import MatchLevel, classify_equivalence

CATEGORIES = ("unitary", "composite", "cross-chain unitary", "cross-chain composite", "inexpressible")
LEVELS = (MatchLevel.EM, MatchLevel.FE, MatchLevel.SA, MatchLevel.EI)


@dataclass(frozen=True)
class BenchCase:
    id: str
    utterance: str
    category: str
    golden: Any  # raw payload JSON; an undecodable golden classifies as EI
    expect: str | None = None


def load_cases(directory: str | Path) -> list[BenchCase]:
    """Every ``*.json`` file under ``directory``, sorted by path. One case per file."""
    root = Path(directory)
    if not root.is_dir():
        raise ConfigError(f"cases directory not found: {root}")
    cases = []
    for path in sorted(root.rglob("*.json")):
        try:
            raw = json.loads(path.read_text(encoding="utf-8"))
            case = BenchCase(str(raw["id"]), raw["utterance"], raw["category"], raw["golden"], raw.get("expect"))
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"malformed case file {path}: {exc!r}") from exc
        if case.category not in CATEGORIES:
            raise ConfigError(f"{path}: unknown category {case.category!r}")
        cases.append(case)
    ids = [c.id for c in cases]
    if len(set(ids)) != len(ids):
        raise ConfigError("duplicate case ids")
    return cases


@dataclass
class CaseResult:
    id: str
    category: str
    level: MatchLevel
    stage: str | None = None
    error: str | None = None
    payload: list | None = None

    def to_obj(self) -> dict:
        out = {"id": self.id, "category": self.category, "level": self.level.name, "stage": self.stage}
        if self.error:
            out["error"] = self.error
        return out


def _count(results) -> dict[str, int]:
    counts = {lvl.name: 0 for lvl in LEVELS}
    for r in results:
        counts[r.level.name] += 1
    return counts


def _rate(counts: dict[str, int]) -> float:
    total = sum(counts.values())
    return (counts["EM"] + counts["FE"]) / total if total else 0.0


@dataclass
class BenchReport:
    results: list[CaseResult]
    k: int | None = None
    flags: dict[str, bool] = field(default_factory=dict)

    @property
    def counts(self) -> dict[str, int]:
        return _count(self.results)

    @property
    def total(self) -> int:
        return len(self.results)

    @property
    def pass_rate(self) -> float:
        return _rate(self.counts)

    def by_category(self) -> dict[str, dict]:
        out = {}
        for cat in CATEGORIES:
            rs = [r for r in self.results if r.category == cat]
            counts = _count(rs)
            out[cat] = {"total": len(rs), **counts, "passRate": _rate(counts)}
        return out

    def to_obj(self) -> dict:
        return {
            "k": self.k,
            "flags": self.flags,
            "total": self.total,
            "counts": self.counts,
            "passRate": self.pass_rate,
            "categories": self.by_category(),
            "cases": [r.to_obj() for r in self.results],
        }

    def table(self) -> str:
        mark = {True: "+", False: "-"}
        head = ["k", "RE", "PS", "SI", "Exact Match", "Functional Equivalence", "Semantic Analogy",
                "Error Identification", "Pass Rate (%)"]
        c = self.counts
        k = "-" if self.k is None or not self.flags.get("PS", True) else str(self.k)
        row = [k, *(mark[self.flags.get(f, True)] for f in ("RE", "PS", "SI")),
               str(c["EM"]), str(c["FE"]), str(c["SA"]), str(c["EI"]), f"{100 * self.pass_rate:.2f}"]
        lines = _align([head, row])
        cat_head = ["Category", "Cases", "EM", "FE", "SA", "EI", "Pass Rate (%)"]
        cat_rows = [cat_head]
        for cat, v in self.by_category().items():
            cat_rows.append([cat, str(v["total"]), str(v["EM"]), str(v["FE"]), str(v["SA"]), str(v["EI"]),
                             f"{100 * v['passRate']:.2f}"])
        return "\n".join(lines + [""] + _align(cat_rows)) + "\n"


def _align(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    out = []
    for n, r in enumerate(rows):
        out.append("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip())
        if n == 0:
            out.append("  ".join("-" * w for w in widths))
    return out


def run_case(case: BenchCase, pipeline) -> CaseResult:
    try:
        res = pipeline.run(case.utterance)
    except DaoForgeError as exc:
        return CaseResult(case.id, case.category, MatchLevel.EI, None, f"{type(exc).__name__}: {exc}")
    level = classify_equivalence(res.payload, case.golden, pipeline.state_model)
    return CaseResult(case.id, case.category, level, res.stage, payload=res.payload.to_obj())


def run_bench(cases, pipeline, jobs: int = 1) -> BenchReport:
    cases = list(cases)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as pool:
            results = list(pool.map(lambda c: run_case(c, pipeline), cases))
    else:
        results = [run_case(c, pipeline) for c in cases]
    flags = {"RE": pipeline.use_extractor, "PS": pipeline.use_synthesizer, "SI": pipeline.use_interpreter}
    return BenchReport(results, pipeline.k, flags)
