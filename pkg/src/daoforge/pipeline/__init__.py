"""Natural language to proposal payloads: extraction, synthesis, checking."""

from .equivalence import MatchLevel, as_payload, classify_equivalence
from .extract import GeneratorExtractor, RuleExtractor, extract_relations
from .fallback import EtherscanAbiSource, FixtureAbiSource, interpret_fallback, parse_abi
from .generators import LiveGenerator, ScriptedGenerator, TemplateGenerator
from .prompt import build_prompt, count_tokens
from .relations import ActionFrame, Entity, LabeledUtterance
from .run import Pipeline, PipelineResult
from .simulate import StateDelta, StateModel, load_state_model, simulate
from .synthesize import SynthesisResult, nearest_samples, retrieve_samples, synthesize, synthesize_traced
from .validate import ValidationReport, sanity_check

__all__ = [
    "ActionFrame",
    "Entity",
    "EtherscanAbiSource",
    "FixtureAbiSource",
    "GeneratorExtractor",
    "LabeledUtterance",
    "LiveGenerator",
    "MatchLevel",
    "Pipeline",
    "PipelineResult",
    "RuleExtractor",
    "ScriptedGenerator",
    "StateDelta",
    "StateModel",
    "SynthesisResult",
    "TemplateGenerator",
    "ValidationReport",
    "as_payload",
    "build_prompt",
    "classify_equivalence",
    "count_tokens",
    "extract_relations",
    "interpret_fallback",
    "load_state_model",
    "parse_abi",
    "nearest_samples",
    "retrieve_samples",
    "sanity_check",
    "simulate",
    "synthesize",
    "synthesize_traced",
]
