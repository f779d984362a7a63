"""Label sets: normalized ``kind:value`` tags attached to utterances and samples."""

from __future__ import annotations

from typing import Iterable

LABEL_KINDS = ("intent", "fn", "param", "network", "protocol")


def label(kind: str, value: str) -> str:
    if kind not in LABEL_KINDS:
        raise ValueError(f"unknown label kind {kind!r}")
    return f"{kind}:{value.strip().lower()}"


class LabelSet(frozenset):
    """Set of normalized tags. Built from ``kind:value`` strings or (kind, value) pairs."""

    def __new__(cls, items: Iterable = ()):
        tags = []
        for item in items:
            if isinstance(item, tuple):
                tags.append(label(*item))
            else:
                kind, _, value = str(item).partition(":")
                tags.append(label(kind, value))
        return super().__new__(cls, tags)

    def of_kind(self, kind: str) -> set[str]:
        prefix = kind + ":"
        return {t[len(prefix):] for t in self if t.startswith(prefix)}

    def __repr__(self):
        return f"LabelSet({sorted(self)!r})"


def frame_labels(intent: str | None, action: str | None, params: Iterable[str], network: str | None,
                 family: str | None) -> set[tuple[str, str]]:
    out = set()
    if intent:
        out.add(("intent", intent))
    if action:
        out.add(("fn", action))
    out.update(("param", p) for p in params)
    if network:
        out.add(("network", network))
    if family:
        out.add(("protocol", family))
    return out


def assign_labels(normalized: str, relations) -> LabelSet:
    """Labels for one utterance: the union over its action frames.

    ``relations`` is a labeled utterance. Entities that were never recognized
    carry no labels, and an empty text has none.
    """
    if not normalized.strip():
        return LabelSet()
    tags: set[tuple[str, str]] = set()
    for f in relations.frames:
        tags |= frame_labels(f.intent, f.action, f.params, f.network, f.family)
    if not relations.frames:
        tags |= frame_labels(relations.intent, None, (), relations.network, relations.protocol)
    return LabelSet(tags)
