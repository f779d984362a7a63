"""Label-Centric Retrieval: greedy selection by marginal label coverage.

Candidates are the samples sharing at least one label with the query. They
are sorted by distance to the query (sample id breaks exact ties), then
picked one at a time, each pick being the first candidate that strictly
raises the number of query labels covered so far. Once no candidate adds a
label the rest follow in distance order. At most ``k`` are returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .embed import distance


@dataclass(frozen=True)
class Candidate:
    id: Hashable
    labels: frozenset
    distance: float


def lcr_rank(query_labels: Iterable[str], candidates: Sequence[Candidate], k: int) -> list[Candidate]:
    if k < 0:
        raise ValueError("k must be non-negative")
    wanted = frozenset(query_labels)
    pool = sorted((c for c in candidates if c.labels & wanted), key=lambda c: (c.distance, c.id))
    picked: list[Candidate] = []
    covered: set = set()
    while pool and len(picked) < k:
        best_j, best = 0, -1
        for j, c in enumerate(pool):
            curr = len(covered | (c.labels & wanted))
            if curr > best:
                best, best_j = curr, j
        chosen = pool.pop(best_j)
        covered |= chosen.labels & wanted
        picked.append(chosen)
    return picked


def lcr_retrieve(x_labels, x_vector, db, k: int) -> list:
    """Samples from ``db`` in retrieval order, at most ``k`` of them."""
    by_id = {s.id: s for s in db.samples}
    cands = [Candidate(s.id, frozenset(s.labels), distance(s.embedding, x_vector)) for s in db.samples]
    return [by_id[c.id] for c in lcr_rank(x_labels, cands, k)]


def matched_count(x_labels, sample) -> int:
    return len(frozenset(x_labels) & frozenset(sample.labels))
