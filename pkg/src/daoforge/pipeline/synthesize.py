"""Program synthesis: retrieve, prompt, generate, validate, retry."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..ast import Program
from ..errors import DaoForgeError, SynthesisFailed
from ..evaluator import eval_program
from ..registry import Registry
from ..retrieval.embed import distance
from ..retrieval.labels import assign_labels
from ..retrieval.lcr import lcr_retrieve
from .generators import Generator, program_text
from .prompt import build_prompt
from .simulate import simulate
from .validate import sanity_check


@dataclass
class SynthesisResult:
    program: Program
    source: str
    attempts: int
    samples: list = field(default_factory=list)
    prompts: list[str] = field(default_factory=list)

    @property
    def retries(self) -> int:
        return self.attempts - 1


def retrieve_samples(labeled, db, k: int, embedder) -> list:
    if db is None or k <= 0 or embedder is None:
        return []
    x_labels = assign_labels(labeled.normalized, labeled)
    return lcr_retrieve(x_labels, embedder.embed(labeled.normalized), db, k)


def nearest_samples(text: str, db, k: int, embedder) -> list:
    """Plain k-nearest retrieval by embedding distance, used when labels are unavailable."""
    if db is None or k <= 0 or embedder is None:
        return []
    vec = embedder.embed(text)
    return sorted(db.samples, key=lambda s: (distance(vec, s.embedding), s.id))[:k]


def synthesize_traced(
    labeled,
    db,
    k: int,
    generator: Generator,
    registry: Registry,
    max_retries: int = 2,
    embedder=None,
    budget: int | None = 8000,
    state_model=None,
    samples: list | None = None,
) -> SynthesisResult:
    """Like :func:`synthesize` but also reports attempts, samples and prompts.

    ``samples`` skips retrieval and uses the given few-shot examples.
    """
    if max_retries < 0:
        raise ValueError("max_retries must be non-negative")
    if samples is None:
        samples = retrieve_samples(labeled, db, k, embedder)
    diags: list[str] = []
    prompts: list[str] = []
    for attempt in range(1, max_retries + 2):
        prompt = build_prompt(labeled, samples, budget, diags)
        prompts.append(prompt)
        source = program_text(generator.complete(prompt))
        report = sanity_check(source, registry, require_actions=True)
        diags = list(report.diagnostics)
        if report.ok and state_model is not None:
            try:
                simulate(eval_program(report.program, registry), state_model)
            except DaoForgeError as exc:
                diags = [f"simulation: {exc}"]
        if not diags:
            return SynthesisResult(report.program, source, attempt, samples, prompts)
    raise SynthesisFailed(f"no valid program after {max_retries + 1} attempts", diags, max_retries + 1)


def synthesize(labeled, db, k: int, generator: Generator, registry: Registry, max_retries: int = 2, **kw) -> Program:
    """First generated program passing validation; :class:`SynthesisFailed` otherwise."""
    return synthesize_traced(labeled, db, k, generator, registry, max_retries, **kw).program
