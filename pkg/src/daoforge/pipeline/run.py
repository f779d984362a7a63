"""End-to-end pipeline: extract relations, synthesize, evaluate, fall back."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Mapping

from ..config import Config
from ..errors import ConfigError
from ..errors import InterpreterError, SynthesisFailed
from ..evaluator import eval_program
from ..payload import ProposalPayload
from ..registry import Registry, load_registry
from ..retrieval.embed import HashingEmbedder, HttpEmbedder
from ..retrieval.lexicon import Lexicon, load_lexicon
from ..retrieval.sampledb import SampleDB, load_sample_db
from .extract import RuleExtractor
from .fallback import EtherscanAbiSource, FixtureAbiSource, interpret_fallback
from .generators import LiveGenerator, ScriptedGenerator, TemplateGenerator
from .relations import LabeledUtterance
from .simulate import StateModel, load_state_model
from .synthesize import nearest_samples, retrieve_samples, synthesize_traced


@dataclass
class PipelineResult:
    labeled: LabeledUtterance
    payload: ProposalPayload
    stage: str  # "program" or "fallback"
    program: str | None = None
    attempts: int = 0
    samples: list[str] = field(default_factory=list)


class Pipeline:
    def __init__(
        self,
        registry: Registry,
        lexicon: Lexicon,
        db: SampleDB | None,
        embedder,
        generator,
        abi_source,
        state_model: StateModel | None,
        k: int = 4,
        max_retries: int = 2,
        token_budget: int | None = 8000,
        threshold: float = 0.6,
        use_extractor: bool = True,
        use_synthesizer: bool = True,
        use_interpreter: bool = True,
    ):
        self.registry, self.lexicon, self.db = registry, lexicon, db
        self.embedder, self.generator, self.abi_source = embedder, generator, abi_source
        self.state_model = state_model
        self.k, self.max_retries, self.token_budget, self.threshold = k, max_retries, token_budget, threshold
        self.use_extractor, self.use_synthesizer, self.use_interpreter = use_extractor, use_synthesizer, use_interpreter
        self.extractor = RuleExtractor(lexicon, registry)

    @classmethod
    def from_config(cls, cfg: Config, offline: bool = True, env: Mapping[str, str] | None = None, **flags) -> "Pipeline":
        env = os.environ if env is None else env
        cfg.check_paths()
        registry = load_registry(cfg.registry)
        lexicon = load_lexicon(cfg.lexicon)
        if offline or cfg.embedding == "test":
            embedder = HashingEmbedder(cfg.embed_dim, cfg.embed_seed)
        else:
            embedder = HttpEmbedder(cfg.embedding_url, cfg.embedding_model, _key(env, "GENERATOR_API_KEY"),
                                    cfg.embed_dim, cfg.timeout)
        if offline or cfg.generator == "template":
            generator = TemplateGenerator(registry)
        elif cfg.generator == "scripted":
            if not cfg.scripted_replies:
                raise ConfigError("scripted generator needs scripted_replies")
            generator = ScriptedGenerator(cfg.scripted_replies)
        else:
            generator = LiveGenerator(cfg.generator_url, cfg.generator_model, _key(env, "GENERATOR_API_KEY"),
                                      cfg.timeout)
        if offline or cfg.abi_source == "fixture":
            abi_source = FixtureAbiSource(cfg.fixture_dir)
        else:
            abi_source = EtherscanAbiSource(_key(env, "ETHERSCAN_API_KEY"), cfg.etherscan_url, cfg.timeout)
        db = load_sample_db(cfg.samples, lexicon, embedder, registry)
        model = load_state_model(cfg.state_model)
        return cls(registry, lexicon, db, embedder, generator, abi_source, model, cfg.k, cfg.max_retries,
                   cfg.token_budget, cfg.threshold, **flags)

    def extract(self, utterance: str) -> LabeledUtterance:
        labeled = self.extractor.extract(utterance)
        if not self.use_extractor:
            # no relation labels: only the normalized text survives
            labeled = LabeledUtterance(labeled.original, labeled.normalized)
        return labeled

    def retrieve(self, labeled: LabeledUtterance) -> list:
        if self.use_extractor:
            return retrieve_samples(labeled, self.db, self.k, self.embedder)
        return nearest_samples(labeled.normalized, self.db, self.k, self.embedder)

    def _fallback_applies(self, labeled: LabeledUtterance) -> bool:
        return bool(labeled.intent) and not any(f.complete for f in labeled.frames)

    def run(self, utterance: str) -> PipelineResult:
        labeled = self.extract(utterance)
        if self.use_synthesizer:
            try:
                res = synthesize_traced(labeled, self.db, self.k, self.generator, self.registry, self.max_retries,
                                        embedder=self.embedder, budget=self.token_budget,
                                        state_model=self.state_model, samples=self.retrieve(labeled))
                payload = eval_program(res.program, self.registry)
                return PipelineResult(labeled, payload, "program", res.source, res.attempts,
                                      [s.id for s in res.samples])
            except SynthesisFailed:
                if not (self.use_interpreter and self._fallback_applies(labeled)):
                    raise
        elif not self.use_interpreter:
            raise SynthesisFailed("both the synthesizer and the interpreter are disabled")
        payload = interpret_fallback(labeled, None, self.abi_source, self.registry, self.lexicon, self.threshold)
        return PipelineResult(labeled, payload, "fallback")


def _key(env: Mapping[str, str], name: str) -> str:
    value = env.get(name)
    if not value:
        raise ConfigError(f"live mode needs the {name} environment variable")
    return value


__all__ = ["InterpreterError", "Pipeline", "PipelineResult", "SynthesisFailed"]
