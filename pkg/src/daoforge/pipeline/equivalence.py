"""Match levels between a generated payload and a golden one."""

from __future__ import annotations

import enum
import json
from functools import total_ordering

from ..errors import DaoForgeError, DecodeError
from ..payload import ProposalPayload
from .simulate import StateModel, simulate


@total_ordering
class MatchLevel(enum.Enum):
    EI = 0
    SA = 1
    FE = 2
    EM = 3

    def __lt__(self, other):
        if not isinstance(other, MatchLevel):
            return NotImplemented
        return self.value < other.value

    @property
    def passed(self) -> bool:
        return self in (MatchLevel.EM, MatchLevel.FE)


def as_payload(p) -> ProposalPayload | None:
    """Coerce JSON text, a parsed JSON list or a payload; ``None`` when undecodable."""
    if isinstance(p, ProposalPayload):
        return p
    try:
        if isinstance(p, (str, bytes)):
            return ProposalPayload.from_json(p if isinstance(p, str) else p.decode())
        if isinstance(p, list):
            return ProposalPayload.from_obj(p)
    except (DecodeError, UnicodeDecodeError):
        return None
    return None


def _canonical(p: ProposalPayload) -> str:
    return json.dumps(p.to_obj(), sort_keys=True)


def classify_equivalence(generated, golden, model: StateModel) -> MatchLevel:
    gen, gold = as_payload(generated), as_payload(golden)
    if gen is None or gold is None:
        return MatchLevel.EI
    if _canonical(gen) == _canonical(gold):
        return MatchLevel.EM
    try:
        a, b = simulate(gen, model), simulate(gold, model)
    except DaoForgeError:
        return MatchLevel.EI
    if a == b:
        return MatchLevel.FE
    if a.keys() == b.keys():
        return MatchLevel.SA
    return MatchLevel.EI
