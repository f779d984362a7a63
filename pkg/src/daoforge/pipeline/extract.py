"""Relation extraction: intent, entities and semantic roles.

The rule extractor works on normalized tokens. The utterance is split into
clauses at ``and``, commas and semicolons; a clause containing an action
keyword yields one frame per keyword. Parameters are bound from entities
whose neighbouring words match the parameter's cue words. Market-like
parameters (marked by a trailing cue such as "market"), the network and the
protocol are shared context across clauses.
"""

from __future__ import annotations

import json
import re
from typing import Protocol

from ..errors import ExtractorError
from ..registry import Action, ParamSpec, Registry
from ..retrieval.lexicon import Lexicon
from ..retrieval.normalize import NormToken, normalize_tokens, render
from .relations import ActionFrame, Entity, LabeledUtterance

ENTITY_KINDS = ("token", "number", "address", "network", "protocol", "contract")
_ARTICLES = frozenset({"the", "a", "an"})
_COMPATIBLE = {"token": ("token", "address"), "address": ("address",), "number": ("number",)}


class Extractor(Protocol):
    identity: str

    def extract(self, utterance: str) -> LabeledUtterance: ...


class RuleExtractor:
    identity = "rules"

    def __init__(self, lexicon: Lexicon, registry: Registry, window: int = 2):
        self.lexicon = lexicon
        self.registry = registry
        self.window = window
        self.keywords: dict[str, list[tuple[str, Action]]] = {}
        for fam, acts in registry.actions.items():
            for act in acts.values():
                for kw in act.keywords:
                    self.keywords.setdefault(kw.lower(), []).append((fam, act))

    # ---- neighbourhood cues
    def _before(self, toks, clause, pos) -> list[str]:
        out = []
        for j in reversed([c for c in clause if c < pos]):
            t = toks[j]
            if t.text in _ARTICLES or t.kind in ("network", "protocol"):
                continue
            out.append(t.text)
            if len(out) == self.window:
                break
        return out

    def _after(self, toks, clause, pos) -> list[str]:
        out = []
        for j in [c for c in clause if c > pos]:
            t = toks[j]
            if t.text in _ARTICLES or t.kind in ("network", "protocol"):
                continue
            out.append(t.text)
            if len(out) == self.window:
                break
        return out

    def _cue_hit(self, p: ParamSpec, toks, clause, pos, use_after: bool) -> bool:
        if use_after:
            return bool(p.after) and any(w in p.after for w in self._after(toks, clause, pos))
        return bool(p.cues) and any(w in p.cues for w in self._before(toks, clause, pos))

    # ---- main entry
    def extract(self, utterance: str) -> LabeledUtterance:
        toks = normalize_tokens(utterance, self.lexicon)
        normalized = render(toks)
        entities: list[Entity] = []
        ent_at: dict[int, int] = {}
        for i, t in enumerate(toks):
            if t.kind in ENTITY_KINDS:
                ent_at[i] = len(entities)
                entities.append(Entity(t.span, t.kind, t.text, utterance[t.start:t.end]))
        verbs = [t.text for t in toks if t.kind == "verb"]
        intent = verbs[0] if verbs else None
        polarity = self.lexicon.verb_base(intent)[1] if intent else True
        network = next((e.value for e in entities if e.kind == "network"), None)
        protocol = next((e.value for e in entities if e.kind == "protocol"), None)

        clauses = _split(toks)
        frames: list[ActionFrame] = []
        roles: dict[int, str] = {}
        used: set[int] = set()
        clause_verb = intent
        for ci, clause in enumerate(clauses):
            clause_verb = next((toks[j].text for j in clause if toks[j].kind == "verb"), clause_verb)
            own_net = next((toks[j].text for j in clause if toks[j].kind == "network"), None)
            net = own_net or network
            for j in clause:
                if toks[j].kind not in ("term", "verb") or toks[j].text not in self.keywords:
                    continue
                resolved = self._pick_action(toks[j].text, protocol, clause_verb)
                if resolved is None:
                    continue
                fam, act = resolved
                frame = self._bind(act, fam, toks, clauses, ci, ent_at, used, net)
                frames.append(frame)
                for p, e in frame.args:
                    roles.setdefault(e, p)
                if frame.token is not None:
                    roles.setdefault(frame.token, "token")

        for i, t in enumerate(toks):
            e = ent_at.get(i)
            if e is None or e in roles:
                continue
            if t.kind in ("network", "protocol"):
                roles[e] = t.kind
            elif t.kind == "contract":
                roles[e] = "target"
            elif t.kind == "token":
                clause = next(c for c in clauses if i in c)
                if "market" in self._after(toks, clause, i)[:1]:
                    roles[e] = "market"

        return LabeledUtterance(
            utterance,
            normalized,
            intent,
            tuple(entities),
            tuple(sorted(roles.items())),
            tuple(frames),
            network,
            protocol,
            polarity,
        )

    def _pick_action(self, keyword, protocol, verb) -> tuple[str, Action] | None:
        cands = self.keywords[keyword]
        if protocol is not None and len(cands) > 1:
            cands = [c for c in cands if c[0] == protocol] or cands
        if verb is not None and len(cands) > 1:
            cands = [c for c in cands if c[1].intent == self.lexicon.verb_base(verb)[0]] or cands
        # an ambiguous keyword yields no frame rather than a guess
        return cands[0] if len(cands) == 1 else None

    def _bind(self, act: Action, fam, toks, clauses, ci, ent_at, used, net) -> ActionFrame:
        clause = clauses[ci]
        here = [(j, ent_at[j]) for j in clause if j in ent_at]
        args: dict[str, int] = {}
        taken = set(used)

        def kind_ok(p, e_tok):
            return e_tok.kind in _COMPATIBLE.get(p.entity, (p.entity,))

        # trailing cues first, so "for the USDC market" is not read as an asset cue
        order = [p for p in act.params if p.after] + [p for p in act.params if not p.after]
        for p in order:
            for j, e in here:
                if e in taken or not kind_ok(p, toks[j]):
                    continue
                if self._cue_hit(p, toks, clause, j, bool(p.after)):
                    args[p.name] = e
                    taken.add(e)
                    break
        # shared context: trailing-cue parameters may come from any clause
        for p in act.params:
            if p.name in args or not p.after:
                continue
            for cj, other in enumerate(clauses):
                if cj == ci:
                    continue
                hit = next((ent_at[j] for j in other if j in ent_at and kind_ok(p, toks[j])
                            and self._cue_hit(p, toks, other, j, True)), None)
                if hit is not None:
                    args[p.name] = hit
                    break
        # positional fallback inside the clause
        for p in act.params:
            if p.name in args:
                continue
            for j, e in here:
                if e not in taken and kind_ok(p, toks[j]):
                    args[p.name] = e
                    taken.add(e)
                    break
        token = None
        needs_token = act.protocol_entity == "token"
        if needs_token:
            token = next((e for j, e in here if e not in taken and toks[j].kind == "token"), None)
            if token is not None:
                taken.add(token)
        used |= {e for p, e in args.items() if not _param(act, p).after}
        if token is not None:
            used.add(token)
        chain = None
        if net is not None:
            chain = self.registry.chain_id_for(net)
            if chain is None:
                chain = self.lexicon.chain_ids.get(net)
        return ActionFrame(
            act.name.name,
            fam,
            act.intent,
            net,
            chain,
            tuple((p.name, args[p.name]) for p in act.params if p.name in args),
            tuple(p.name for p in act.params),
            token,
            needs_token,
        )


def _param(act: Action, name: str) -> ParamSpec:
    return next(p for p in act.params if p.name == name)


def _split(toks: list[NormToken]) -> list[list[int]]:
    clauses: list[list[int]] = [[]]
    for i, t in enumerate(toks):
        if t.kind == "punct" or (t.kind == "word" and t.text == "and"):
            if clauses[-1]:
                clauses.append([])
            continue
        clauses[-1].append(i)
    return [c for c in clauses if c]


_JSON_BLOCK = re.compile(r"\{.*\}", re.S)


class GeneratorExtractor:
    """Query/response extraction through a text generator.

    The generator is asked for the labeled-utterance JSON object. Anything
    that does not parse into one raises :class:`ExtractorError`.
    """

    PROMPT = (
        "Summarize the request, then answer: what is the intent, which entities "
        "(tokens, numbers, addresses, networks, protocols) does it mention, and "
        "which role does each entity play? Reply with one JSON object with keys "
        "original, normalized, intent, entities, roles, frames, network, protocol.\n"
        "Request: {utterance}\n"
    )

    def __init__(self, generator):
        self.generator = generator
        self.identity = f"generator:{getattr(generator, 'identity', 'unknown')}"

    def extract(self, utterance: str) -> LabeledUtterance:
        reply = self.generator.complete(self.PROMPT.format(utterance=utterance))
        m = _JSON_BLOCK.search(reply or "")
        if m is None:
            raise ExtractorError("extractor reply holds no JSON object")
        try:
            obj = json.loads(m.group())
            obj.setdefault("original", utterance)
            return LabeledUtterance.from_obj(obj)
        except (ValueError, TypeError, KeyError) as exc:
            raise ExtractorError(f"extractor reply is not a labeled utterance: {exc}") from exc


def extract_relations(utterance: str, extractor: Extractor) -> LabeledUtterance:
    return extractor.extract(utterance)
