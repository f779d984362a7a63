"""Normalization dictionary: verb synonyms, token aliases and domain terms.

Every section maps a canonical spelling to the phrases that should be
rewritten to it. Canonical spellings are single words; aliases may span
several words and are matched longest-first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from ..errors import DaoForgeError

# phrase table sections and the token kind each one produces
SECTIONS = ("verbs", "tokens", "terms", "networks", "protocols", "contracts")
_KIND = {
    "verbs": "verb",
    "tokens": "token",
    "terms": "term",
    "networks": "network",
    "protocols": "protocol",
    "contracts": "contract",
}


class LexiconError(DaoForgeError):
    pass


@dataclass(frozen=True)
class Lexicon:
    # lowercase word tuple -> (kind, canonical spelling)
    phrases: Mapping[tuple[str, ...], tuple[str, str]]
    chain_ids: Mapping[str, int] = field(default_factory=dict)
    # negated verb -> (base verb, polarity)
    polarity: Mapping[str, tuple[str, bool]] = field(default_factory=dict)
    stopwords: frozenset[str] = frozenset()
    longest: int = 1

    def lookup(self, words: tuple[str, ...]) -> tuple[str, str] | None:
        return self.phrases.get(words)

    def canonicals(self, kind: str) -> set[str]:
        return {c for k, c in self.phrases.values() if k == kind}

    def verb_base(self, verb: str) -> tuple[str, bool]:
        """Base verb and polarity, e.g. ``unpause`` -> (``pause``, False)."""
        return self.polarity.get(verb, (verb, True))


def _entries(section: str, raw) -> list[tuple[str, list[str], int | None]]:
    out = []
    for canonical, spec in raw.items():
        chain = None
        if isinstance(spec, dict):
            chain = spec.get("chainId")
            aliases = spec.get("aliases", [])
        else:
            aliases = spec
        out.append((canonical, list(aliases), chain))
    return out


def build_lexicon(raw: dict) -> Lexicon:
    phrases: dict[tuple[str, ...], tuple[str, str]] = {}
    chain_ids: dict[str, int] = {}
    for section in SECTIONS:
        kind = _KIND[section]
        for canonical, aliases, chain in _entries(section, raw.get(section, {})):
            if not canonical or " " in canonical:
                raise LexiconError(f"{section}: canonical spelling {canonical!r} must be one word")
            out = canonical if kind in ("token", "contract") else canonical.lower()
            if chain is not None:
                chain_ids[out] = int(chain)
            for phrase in [canonical, *aliases]:
                key = tuple(phrase.lower().split())
                prev = phrases.get(key)
                if prev is not None and prev != (kind, out):
                    raise LexiconError(f"phrase {phrase!r} maps to both {prev[1]!r} and {out!r}")
                phrases[key] = (kind, out)
    # a rewritten word must never complete a longer phrase on a second pass
    outputs = {c.lower() for _, c in phrases.values()}
    for key in phrases:
        if len(key) > 1 and outputs.intersection(key):
            bad = sorted(outputs.intersection(key))
            raise LexiconError(f"alias {' '.join(key)!r} contains canonical word(s) {bad}")
    polarity = {neg: (base, False) for base, negs in raw.get("negations", {}).items() for neg in negs}
    return Lexicon(
        phrases,
        chain_ids,
        polarity,
        frozenset(w.lower() for w in raw.get("stopwords", [])),
        max((len(k) for k in phrases), default=1),
    )


def load_lexicon(source: str | Path | dict) -> Lexicon:
    if isinstance(source, dict):
        return build_lexicon(source)
    try:
        raw = json.loads(Path(source).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise LexiconError(f"cannot read lexicon {source}: {exc}") from exc
    return build_lexicon(raw)
