"""Brute-force reference implementations used to check the fast code paths."""

from itertools import permutations


def lcr_bruteforce(query_labels, candidates, k):
    """Best ordering over every permutation of the label-overlapping candidates.

    Orderings are compared position by position on (-accrued labels, distance,
    id), which is the selection rule written out without any greediness.
    """
    wanted = frozenset(query_labels)
    pool = [c for c in candidates if c.labels & wanted]
    size = min(k, len(pool))
    best_key, best = None, []
    for order in permutations(pool, size):
        covered, key = set(), []
        for c in order:
            covered |= c.labels & wanted
            key.append((-len(covered), c.distance, c.id))
        if best_key is None or key < best_key:
            best_key, best = key, list(order)
    return best


def accrued(seq, wanted):
    covered = set()
    for c in seq:
        covered |= c.labels & wanted
    return len(covered)


def swap_maximal(result, query_labels, candidates):
    """No single swap of the j-th pick with a later or unreturned candidate gains labels at prefix j."""
    wanted = frozenset(query_labels)
    pool = [c for c in candidates if c.labels & wanted]
    for j in range(len(result)):
        base = accrued(result[: j + 1], wanted)
        rest = [c for c in pool if c not in result[:j + 1]]
        for other in rest:
            if accrued(result[:j] + [other], wanted) > base:
                return False
    return True
