"""DAOLang compiler and proposal-payload synthesis toolkit."""

from importlib import resources
from pathlib import Path

from .ast import Program, Value, make_value, pretty_print
from .evaluator import eval_program
from .parser import parse
from .payload import Call, ProposalPayload
from .registry import Registry, load_registry

__version__ = "0.1.0"


def data_path(name: str) -> Path:
    """Path of a bundled data file (registry, lexicon, samples, state model, ABIs)."""
    return Path(str(resources.files("daoforge") / "data" / name))


def compile_source(source: str, registry: Registry) -> ProposalPayload:
    return eval_program(parse(source), registry)


__all__ = [
    "Call",
    "Program",
    "ProposalPayload",
    "Registry",
    "Value",
    "compile_source",
    "data_path",
    "eval_program",
    "load_registry",
    "make_value",
    "parse",
    "pretty_print",
]
