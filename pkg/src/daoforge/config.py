"""Run configuration: data file locations, providers and retrieval settings."""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from .errors import ConfigError


def _bundled(name: str) -> str:
    from . import data_path

    return str(data_path(name))


@dataclass(frozen=True)
class Config:
    registry: str = field(default_factory=lambda: _bundled("registry.json"))
    samples: str = field(default_factory=lambda: _bundled("samples.jsonl"))
    lexicon: str = field(default_factory=lambda: _bundled("lexicon.json"))
    state_model: str = field(default_factory=lambda: _bundled("state_model.json"))
    fixture_dir: str = field(default_factory=lambda: _bundled("abis"))
    embedding: str = "test"  # test | live
    generator: str = "template"  # template | scripted | live
    abi_source: str = "fixture"  # fixture | etherscan
    k: int = 4
    max_retries: int = 2
    token_budget: int = 8000
    threshold: float = 0.6
    embed_dim: int = 256
    embed_seed: str = "daoforge-embed-v1"
    scripted_replies: tuple[str, ...] = ()
    generator_url: str = "https://api.openai.com/v1/chat/completions"
    generator_model: str = "gpt-4o"
    embedding_url: str = "https://api.openai.com/v1/embeddings"
    embedding_model: str = "text-embedding-3-small"
    etherscan_url: str = "https://api.etherscan.io/v2/api"
    timeout: float = 30.0

    def __post_init__(self):
        if self.k < 0:
            raise ConfigError("k must be non-negative")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be non-negative")
        checks = {
            "embedding": ("test", "live"),
            "generator": ("template", "scripted", "live"),
            "abi_source": ("fixture", "etherscan"),
        }
        for name, allowed in checks.items():
            if getattr(self, name) not in allowed:
                raise ConfigError(f"{name} must be one of {', '.join(allowed)}")

    def check_paths(self):
        for name in ("registry", "samples", "lexicon", "state_model", "fixture_dir"):
            if not Path(getattr(self, name)).exists():
                raise ConfigError(f"{name} path does not exist: {getattr(self, name)}")
        return self

    def with_overrides(self, **kw) -> "Config":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


_PATH_FIELDS = ("registry", "samples", "lexicon", "state_model", "fixture_dir")
_KEY_ALIASES = {"sample_db": "samples", "lexicon_path": "lexicon", "registry_path": "registry",
                "state_model_path": "state_model", "abi_dir": "fixture_dir"}


def load_config(path: str | Path | None = None) -> Config:
    """Defaults point at the bundled data. Relative paths resolve against the file."""
    if path is None:
        return Config()
    path = Path(path)
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    known = {f.name for f in fields(Config)}
    kw = {}
    for key, value in raw.items():
        key = _KEY_ALIASES.get(key.replace("-", "_"), key.replace("-", "_"))
        if key not in known:
            raise ConfigError(f"unknown config key {key!r}")
        if key in _PATH_FIELDS:
            p = Path(value)
            value = str(p if p.is_absolute() else (path.parent / p).resolve())
        if key == "scripted_replies":
            value = tuple(value)
        kw[key] = value
    try:
        return Config(**kw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
