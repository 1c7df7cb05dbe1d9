"""Random test inputs."""

from __future__ import annotations

import random
from itertools import combinations

from .hypergraph import Hypergraph, build
from .packing import greedy_pack


def random_hypergraph(n: int, r: int, m: int, rng: random.Random) -> Hypergraph:
    """``m`` distinct r-subsets of ``range(n)`` drawn uniformly (capped at ``C(n, r)``)."""
    pool = list(combinations(range(n), r))
    return build(n, r, rng.sample(pool, min(m, len(pool))))


def _block(r: int, t: int, first: int, rng: random.Random):
    """``t-1`` edges on exactly ``(t-1)r - 2(t-2) - 1`` fresh vertices from ``first`` on.

    Each edge after the first shares two vertices with the union so far,
    except one (chosen at random) which shares three.
    """
    nxt = first
    edge = tuple(range(nxt, nxt + r))
    nxt += r
    edges = [edge]
    union = list(edge)
    # with r = 3 the three-vertex overlap must wait until the union has grown
    heavy = rng.randrange(2 if r == 3 else 1, t - 1)
    for s in range(1, t - 1):
        share = 3 if s == heavy else 2
        for _ in range(1000):
            old = sorted(rng.sample(union, share))
            new = list(range(nxt, nxt + r - share))
            cand = tuple(sorted(old + new))
            if cand not in edges:
                break
        else:
            raise RuntimeError("could not place a distinct block edge")
        edges.append(cand)
        union.extend(new)
        nxt += r - share
    return edges, union, nxt


def planted_instance(
    r: int,
    t: int,
    blocks: int,
    rng: random.Random,
    spokes: int = 2,
    bridges: int = 1,
    background: int = 0,
) -> Hypergraph:
    """A hypergraph with ``blocks`` vertex-disjoint bad configurations (k=2).

    Around each block, ``spokes`` edges meet it in one vertex and are
    otherwise private; ``bridges`` edges join two random blocks through one
    vertex of each. ``background`` extra vertices carry a greedy packing that
    is free at every level. Every deletion step then sees a bad
    configuration of exact size with all other edges meeting it in 0 or 1
    vertices.
    """
    if t < 3 or (r == 3 and t == 3) or r < 3:
        raise ValueError("need r >= 3, t >= 3 and not (r, t) = (3, 3)")
    edges, unions = [], []
    nxt = 0
    for _ in range(blocks):
        es, union, nxt = _block(r, t, nxt, rng)
        edges += es
        unions.append(union)
    for union in unions:
        for _ in range(spokes):
            edges.append(tuple([rng.choice(union)] + list(range(nxt, nxt + r - 1))))
            nxt += r - 1
    for _ in range(bridges if blocks >= 2 else 0):
        a, b = rng.sample(range(blocks), 2)
        edges.append(tuple([rng.choice(unions[a]), rng.choice(unions[b])] + list(range(nxt, nxt + r - 2))))
        nxt += r - 2
    if background >= r:
        B, _ = greedy_pack(background, r, t, seed=rng.randrange(1 << 30), verify=False)
        edges += [tuple(v + nxt for v in e) for e in B.edges]
        nxt += background
    return build(nxt, r, edges)
