"""Utterance normalization with source spans.

Verb synonyms become their canonical verb, alternative token names become
the contract symbol, domain phrases collapse into one keyword, and the
rest is case-folded. Digit-group commas are dropped ("5,000" -> "5000").
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .lexicon import Lexicon

_LEX_RE = re.compile(
    r"(?P<address>0[xX][0-9a-fA-F]+)"
    r"|(?P<number>\d{1,3}(?:,\d{3})+(?:\.\d+)?%?|\d+(?:\.\d+)?%?)"
    r"|(?P<word>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<punct>[,;])"
)


@dataclass(frozen=True)
class NormToken:
    text: str
    kind: str  # verb token term network protocol contract number address word punct
    start: int
    end: int

    @property
    def span(self) -> tuple[int, int]:
        return (self.start, self.end)


def _raw_tokens(text: str):
    for m in _LEX_RE.finditer(text):
        yield m.lastgroup, m.group(), m.start(), m.end()


def normalize_tokens(utterance: str, lexicon: Lexicon) -> list[NormToken]:
    raw = list(_raw_tokens(utterance))
    out: list[NormToken] = []
    i = 0
    while i < len(raw):
        kind, text, start, end = raw[i]
        if kind == "word":
            # longest phrase starting here, words only
            matched = None
            for n in range(min(lexicon.longest, len(raw) - i), 0, -1):
                window = raw[i:i + n]
                if any(k != "word" for k, *_ in window):
                    continue
                hit = lexicon.lookup(tuple(t.lower() for _, t, _, _ in window))
                if hit is not None:
                    matched = (n, hit)
                    break
            if matched:
                n, (tkind, canonical) = matched
                out.append(NormToken(canonical, tkind, start, raw[i + n - 1][3]))
                i += n
                continue
            out.append(NormToken(text.lower(), "word", start, end))
        elif kind == "number":
            out.append(NormToken(text.replace(",", ""), "number", start, end))
        elif kind == "address":
            out.append(NormToken(text.lower(), "address", start, end))
        else:
            out.append(NormToken(text, "punct", start, end))
        i += 1
    return out


def render(tokens) -> str:
    parts: list[str] = []
    for t in tokens:
        if t.kind == "punct" and parts:
            parts[-1] += t.text
        else:
            parts.append(t.text)
    return " ".join(parts)


def normalize(utterance: str, lexicon: Lexicon) -> str:
    """Canonical spelling of ``utterance``; idempotent."""
    return render(normalize_tokens(utterance, lexicon))
