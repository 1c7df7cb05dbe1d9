"""Edge peeling until every (k-1)-subset has codegree 0 or at least e."""

from __future__ import annotations

import heapq
import random
from itertools import combinations
from math import comb
from typing import NamedTuple, Optional

from .hypergraph import Hypergraph


class Removal(NamedTuple):
    edge: tuple[int, ...]
    subset: tuple[int, ...]  # the responsible (k-1)-subset
    codegree: int  # its codegree just before the removal


class RemovalLog(list):
    """Ordered :class:`Removal` records."""

    def records(self) -> list[dict]:
        return [{"edge": list(x.edge), "subset": list(x.subset), "codegree": x.codegree} for x in self]

    def responsibility(self) -> dict[tuple[int, ...], int]:
        counts: dict[tuple[int, ...], int] = {}
        for x in self:
            counts[x.subset] = counts.get(x.subset, 0) + 1
        return counts


def peel_bound(n: int, k: int, e: int) -> int:
    """``(e-1) * C(n, k-1)``: the most edges :func:`peel` can remove."""
    return (e - 1) * comb(n, k - 1)


def peel(H: Hypergraph, k: int, e: int, rng: Optional[random.Random] = None) -> tuple[Hypergraph, RemovalLog]:
    """Remove edges one at a time while some (k-1)-subset has codegree in
    ``[1, e-1]``; the vertex set is left alone.

    By default the lexicographically least offending subset loses its
    lexicographically least edge, which makes the output reproducible. With
    ``rng`` the subset and edge are chosen at random instead; the guarantees
    (final codegrees, removal bound, at most ``e-1`` removals per subset) hold
    for either order, the output graph does not.
    """
    if not 1 <= k < H.r:
        raise ValueError(f"need 1 <= k < r, got k={k}, r={H.r}")
    if e < 2:
        raise ValueError(f"need e >= 2, got e={e}")
    size = k - 1
    alive = [True] * len(H.edges)
    incident = {key: list(ids) for key, ids in H.incidence(size).items()}
    deg = {key: len(ids) for key, ids in incident.items()}
    first = dict.fromkeys(incident, 0)  # pointer to the least possibly-alive edge
    log = RemovalLog()

    def offending(key):
        return 0 < deg[key] < e

    def remove(key, i):
        log.append(Removal(H.edges[i], key, deg[key]))
        alive[i] = False
        for sub in combinations(H.edges[i], size):
            deg[sub] -= 1

    if rng is None:
        heap = [key for key in incident if offending(key)]
        heapq.heapify(heap)
        while heap:
            key = heap[0]
            if not offending(key):
                heapq.heappop(heap)
                continue
            ids = incident[key]
            while not alive[ids[first[key]]]:
                first[key] += 1
            i = ids[first[key]]
            remove(key, i)
            for sub in combinations(H.edges[i], size):
                if offending(sub):
                    heapq.heappush(heap, sub)
    else:
        while True:
            bad = sorted(key for key in incident if offending(key))
            if not bad:
                break
            key = rng.choice(bad)
            i = rng.choice([j for j in incident[key] if alive[j]])
            remove(key, i)

    return H.subgraph(i for i, a in enumerate(alive) if a), log
